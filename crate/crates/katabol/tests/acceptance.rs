use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::error::Error;
use std::time::Instant;

use katabol::atoms::classify::classify_standard;
use katabol::atoms::copies::decompose_copies;
use katabol::atoms::duality::levels;
use katabol::atoms::irreducible::{flip_check, hilbert_check, hilbert_series};
use katabol::atoms::pieri::{pieri_check_t1, pieri_sets, rectangle_factor_check, PieriKind};
use katabol::atoms::{atom_function, expand_in_atoms, k_kostka, qt_kostka};
use katabol::operators::{generate_atom, generate_h, hook_atom, katabolism, promote_set, restricted_katabolism};
use katabol::poly::BivariatePoly;
use katabol::symfunc::{macdonald_h, SchurExpansion};
use katabol::tableau::{inverse_rsk, rsk};
use katabol::word::{charge, format_word, parse_word, sigma, Letter};
use katabol::{Partition, Tableau, TableauSet};
use num_bigint::BigInt;

type Outcome = Result<(), Box<dyn Error>>;
type Check = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(why().into())
    }
}

fn p(v: &[usize]) -> Partition {
    Partition::from(v)
}

fn t(s: &str) -> Tableau {
    s.parse().unwrap()
}

fn set(items: &[&str]) -> TableauSet {
    TableauSet::new(items.iter().map(|s| t(s)).collect()).unwrap()
}

fn poly(terms: &[(usize, usize, i64)]) -> BivariatePoly {
    BivariatePoly::from_terms(terms.iter().copied())
}

fn tpoly(exps: &[usize]) -> BivariatePoly {
    poly(&exps.iter().map(|&e| (0, e, 1)).collect::<Vec<_>>())
}

fn words(max_len: usize, alphabet: Letter) -> Vec<Vec<Letter>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = vec![];
        for w in &layer {
            for a in 1..=alphabet {
                let mut v: Vec<Letter> = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn has_partition_evaluation(w: &[Letter]) -> bool {
    let m = w.iter().copied().max().unwrap_or(0) as usize;
    let mut ev = vec![0; m];
    for &x in w {
        ev[x as usize - 1] += 1;
    }
    ev.windows(2).all(|p| p[0] >= p[1]) && ev.iter().all(|&c| c > 0)
}

fn c1() -> Outcome {
    let got = charge(&parse_word("12114123234")?);
    ensure(got == 7, || format!("charge is {}", got))
}

fn c2() -> Outcome {
    let got = format_word(&sigma(2, &parse_word("123343222423")?));
    ensure(got == "123343222433", || format!("got {}", got))
}

fn c3() -> Outcome {
    let x = Tableau::from_word(&parse_word("9472581236")?);
    ensure(format_word(&x.reading_word()) == "9472581236", || format!("P-tableau {}", x))?;
    let want = t("8/569/347");
    let got = katabolism(&x, &p(&[2, 1]));
    ensure(got.as_ref() == Some(&want), || format!("katabolism gave {:?}", got))?;
    let r = restricted_katabolism(&x, &p(&[2, 1]));
    ensure(r.is_none(), || format!("restricted katabolism gave {:?}", r))?;
    let y = Tableau::from_word(&parse_word("9472581136")?);
    let r = restricted_katabolism(&y, &p(&[2, 1]));
    ensure(r.as_ref() == Some(&want), || format!("restricted katabolism of {} gave {:?}", y, r))
}

fn c4() -> Outcome {
    let a4 = generate_atom(&p(&[1, 1, 1, 1]), 3)?;
    ensure(*a4 == set(&["4/3/2/1", "3/2/14"]), || format!("A_1111 = {}", a4))?;
    let mid = promote_set(&a4, 2)?;
    let want = set(&["3/2/1145", "3/25/114", "5/3/2/114", "4/3/25/11", "4/3/2/115", "5/4/3/2/11"]);
    ensure(mid == want, || format!("B_2 A_1111 = {}", mid))?;
    let a5 = generate_atom(&p(&[2, 1, 1, 1, 1]), 3)?;
    ensure(*a5 == set(&["3/25/114", "4/3/25/11", "4/3/2/115", "5/4/3/2/11"]), || format!("A_21111 = {}", a5))
}

fn c5() -> Outcome {
    let mu = p(&[2, 1, 1]);
    let tables: [(usize, Vec<(Partition, BivariatePoly)>); 2] = [
        (
            2,
            vec![
                (p(&[2, 2]), poly(&[(0, 1, 1)])),
                (p(&[2, 1, 1]), poly(&[(0, 0, 1), (1, 2, 1)])),
                (p(&[1, 1, 1, 1]), poly(&[(1, 0, 1)])),
            ],
        ),
        (
            3,
            vec![
                (p(&[3, 1]), poly(&[(0, 2, 1)])),
                (p(&[2, 2]), poly(&[(0, 1, 1), (1, 2, 1)])),
                (p(&[2, 1, 1]), poly(&[(0, 0, 1), (1, 2, 1)])),
                (p(&[1, 1, 1, 1]), poly(&[(1, 0, 1)])),
            ],
        ),
    ];
    let large = vec![
        (p(&[4]), poly(&[(0, 3, 1)])),
        (p(&[3, 1]), poly(&[(0, 1, 1), (0, 2, 1), (1, 3, 1)])),
        (p(&[2, 2]), poly(&[(0, 1, 1), (1, 2, 1)])),
        (p(&[2, 1, 1]), poly(&[(0, 0, 1), (1, 1, 1), (1, 2, 1)])),
        (p(&[1, 1, 1, 1]), poly(&[(1, 0, 1)])),
    ];
    let h = macdonald_h(&mu)?;
    let cases = tables.into_iter().chain((4..=6).map(|k| (k, large.clone())));
    for (k, terms) in cases {
        let mut want = SchurExpansion::new();
        for (lambda, c) in terms {
            want.add_term(lambda, &c);
        }
        let got = expand_in_atoms(&h, k)?;
        ensure(got == want, || format!("k={}: {} instead of {}", k, got, want))?;
    }
    Ok(())
}

fn c6() -> Outcome {
    let terms: Vec<(&[usize], &[usize])> = vec![
        (&[3, 2, 2, 1, 1, 1], &[0]),
        (&[4, 2, 1, 1, 1, 1], &[1]),
        (&[3, 3, 2, 1, 1], &[1]),
        (&[4, 2, 2, 1, 1], &[1, 2]),
        (&[3, 3, 3, 1], &[2]),
        (&[4, 3, 1, 1, 1], &[2]),
        (&[5, 2, 1, 1, 1], &[2, 3]),
        (&[4, 3, 2, 1], &[2, 3]),
        (&[5, 2, 2, 1], &[3]),
        (&[4, 3, 3], &[3]),
        (&[5, 3, 1, 1], &[3, 4]),
        (&[6, 2, 1, 1], &[4]),
        (&[5, 3, 2], &[4]),
        (&[6, 3, 1], &[5]),
    ];
    let mut want = SchurExpansion::new();
    for (lambda, exps) in &terms {
        want.add_term(p(lambda), &tpoly(exps));
    }
    ensure(want.len() == 14, || "expected expansion does not have 14 terms".into())?;
    let lambda = p(&[3, 2, 2, 1, 1, 1]);
    let got = atom_function(&lambda, 4)?;
    ensure(got == want, || format!("A = {}", got))?;
    let l = levels(&lambda, 4)?;
    ensure(l == [1, 3, 5, 5, 3, 1], || format!("levels {:?}", l))?;
    let l = levels(&p(&[1, 1, 1, 1, 1]), 2)?;
    ensure(l == [1, 1, 2, 2, 1], || format!("levels of A_11111 {:?}", l))
}

fn c7() -> Outcome {
    let got = p(&[2, 2, 1, 1]).k_conjugate(4)?;
    ensure(got == p(&[3, 2, 1]), || format!("(2,2,1,1) goes to {}", got))?;
    let mut checked = 0;
    for n in 0..=8 {
        for k in 1..=6 {
            for lambda in Partition::bounded(n, k) {
                let c = lambda.k_conjugate(k)?;
                ensure(c.is_bounded(k) && c.size() == n, || format!("{} at k={} goes to {}", lambda, k, c))?;
                let back = c.k_conjugate(k)?;
                ensure(back == lambda, || format!("{} at k={} returns as {}", lambda, k, back))?;
                if lambda.main_hook() <= k {
                    ensure(c == lambda.conjugate(), || format!("{} at k={} is not the conjugate", lambda, k))?;
                }
                checked += 1;
            }
        }
    }
    ensure(checked > 0, || "no cases".into())
}

fn c8() -> Outcome {
    let lambda = p(&[3, 2, 1]);
    let got = pieri_sets(&lambda, 2, 4, PieriKind::Column)?;
    let want: BTreeSet<Partition> = [p(&[3, 3, 2]), p(&[3, 2, 2, 1]), p(&[3, 2, 1, 1, 1])].into_iter().collect();
    let got_set: BTreeSet<Partition> = got.iter().cloned().collect();
    ensure(got_set == want && got.len() == 3, || format!("column set {:?}", got))?;
    let e2 = SchurExpansion::schur(p(&[1, 1]));
    let lhs = e2.multiply(&atom_function(&lambda, 4)?.at_t_one());
    let mut rhs = SchurExpansion::new();
    for mu in &want {
        rhs = rhs.plus(&atom_function(mu, 4)?.at_t_one());
    }
    ensure(lhs == rhs, || format!("e2 A = {} but the sum is {}", lhs, rhs))?;
    let v = pieri_check_t1(&lambda, 2, 4, PieriKind::Column)?;
    ensure(v.is_ok(), || format!("{:?}", v))
}

/// f^λ read off the shapes of all standard tableaux of size n.
fn standard_counts(n: usize) -> katabol::Result<HashMap<Partition, u64>> {
    let mut out = HashMap::new();
    for t in generate_h(&Partition::from(&vec![1; n][..]))?.iter() {
        *out.entry(t.shape()).or_insert(0) += 1;
    }
    Ok(out)
}

fn c9() -> Outcome {
    let one = BigInt::from(1);
    for n in 0..=6 {
        let syt = standard_counts(n)?;
        for mu in Partition::all(n) {
            let kostka: BTreeMap<Partition, BivariatePoly> =
                Partition::all(n).into_iter().map(|l| qt_kostka(&l, &mu).map(|c| (l, c))).collect::<katabol::Result<_>>()?;
            for (lambda, c) in &kostka {
                let f = syt.get(lambda).copied().unwrap_or(0);
                ensure(c.eval(&one, &one) == BigInt::from(f), || format!("K_{},{}(1,1) = {} but f = {}", lambda, mu, c.eval(&one, &one), f))?;
            }
            for k in 1..=6 {
                if !mu.is_bounded(k) {
                    continue;
                }
                let e = k_kostka(&mu, k, true)?;
                for (lambda, c) in e.iter() {
                    ensure(c.has_nonnegative_coefficients(), || format!("mu={} k={} {}: {}", mu, k, lambda, c))?;
                    ensure(c.le_coefficientwise(&kostka[lambda]), || {
                        format!("mu={} k={} {}: {} exceeds {}", mu, k, lambda, c, kostka[lambda])
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn c10() -> Outcome {
    for n in 0..=6 {
        for k in 1..=4 {
            for mu in Partition::bounded(n, k) {
                let dec = decompose_copies(&mu, k)?;
                ensure(dec.is_complete(), || format!("mu={} k={} stuck at {:?}", mu, k, dec.stuck))?;
                let h = generate_h(&mu)?;
                let mut members: Vec<Tableau> = dec.copies.iter().flat_map(|c| c.members.iter().cloned()).collect();
                members.sort();
                let mut all = h.tableaux().to_vec();
                all.sort();
                ensure(members == all, || format!("mu={} k={}: copies do not partition H_mu", mu, k))?;
                let mut sum = SchurExpansion::new();
                for c in &dec.copies {
                    ensure(c.charge == c.index.charge(), || format!("charge label of {}", c.index))?;
                    sum = sum.plus(&atom_function(&c.shape(), k)?.scale(&BivariatePoly::monomial(1, 0, c.charge)));
                }
                let hl = macdonald_h(&mu)?.at_q_zero();
                ensure(sum == hl, || format!("mu={} k={}: copies give {} but H = {}", mu, k, sum, hl))?;
            }
        }
    }
    let dec = decompose_copies(&p(&[1; 9]), 4)?;
    ensure(dec.is_complete(), || "1^9 decomposition incomplete".into())?;
    let index = t("8/6/39/25/147");
    ensure(format_word(&index.reading_word()) == "863925147", || format!("index {}", index))?;
    let copy = dec.find(&index).ok_or("863925147 is not an index")?;
    let want = set(&[
        "3/257/14689",
        "9/3/257/1468",
        "39/257/1468",
        "6/3/25/14789",
        "6/39/25/1478",
        "8/39/257/146",
        "9/6/3/25/1478",
        "8/6/39/25/147",
    ]);
    ensure(copy.members == want, || format!("copy members {}", copy.members))?;
    ensure(copy.shape() == p(&[3, 2, 2, 1, 1]), || format!("copy shape {}", copy.shape()))?;
    let charges: BTreeSet<usize> = copy.members.iter().map(|m| m.charge()).collect();
    ensure(charges == (10..=13).collect(), || format!("charges {:?}", charges))
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn c11() -> Outcome {
    for k in 1..=6 {
        let irr = Partition::k_irreducibles(k);
        ensure(irr.len() == factorial(k), || format!("k={}: {} irreducibles", k, irr.len()))?;
        let max = (k + 1) * k * k.saturating_sub(1) / 6;
        let mut brute = 0;
        for n in 0..=max {
            brute += Partition::bounded(n, k)
                .iter()
                .filter(|l| (1..k).all(|i| l.multiplicity(k - i) <= i) && l.multiplicity(k) == 0)
                .count();
        }
        ensure(brute == factorial(k), || format!("k={}: brute force count {}", k, brute))?;
    }
    ensure(hilbert_series(4) == [1, 1, 2, 3, 3, 4, 3, 3, 2, 1, 1], || format!("series {:?}", hilbert_series(4)))?;
    for k in 2..=5 {
        let s = hilbert_series(k);
        ensure(s.iter().sum::<usize>() == factorial(k), || format!("k={}: series sums to {}", k, s.iter().sum::<usize>()))?;
        let v = hilbert_check(k)?;
        ensure(v.is_ok(), || format!("{:?}", v))?;
    }
    for k in 3..=4 {
        let v = flip_check(k)?;
        ensure(v.is_ok(), || format!("{:?}", v))?;
    }
    let (a, b) = (t("24/13"), t("3/2/14"));
    ensure(format_word(&a.reading_word()) == "2413" && format_word(&b.reading_word()) == "3214", || "reading words".into())?;
    ensure(classify_standard(&a, 2)? == classify_standard(&b, 2)?, || "2413 and 3214 differ at k=2".into())?;
    ensure(classify_standard(&a, 3)? != classify_standard(&b, 3)?, || "2413 and 3214 agree at k=3".into())
}

fn coxeter() -> Outcome {
    for w in words(7, 4) {
        for i in 1..=3 {
            let s = |j: Letter, v: &[Letter]| sigma(j, v);
            ensure(s(i, &s(i, &w)) == w, || format!("sigma_{} squared on {}", i, format_word(&w)))?;
            if i < 3 {
                let l = s(i, &s(i + 1, &s(i, &w)));
                let r = s(i + 1, &s(i, &s(i + 1, &w)));
                ensure(l == r, || format!("braid {} on {}", i, format_word(&w)))?;
            }
            if i == 1 {
                ensure(s(1, &s(3, &w)) == s(3, &s(1, &w)), || format!("far commutation on {}", format_word(&w)))?;
            }
        }
    }
    Ok(())
}

fn rsk_roundtrip() -> Outcome {
    for w in words(7, 4) {
        let (pt, qt) = rsk(&w);
        ensure(pt.shape() == qt.shape() && qt.is_standard(), || format!("shapes for {}", format_word(&w)))?;
        let back = inverse_rsk(&pt, &qt)?;
        ensure(back == w, || format!("{} came back as {}", format_word(&w), format_word(&back)))?;
    }
    Ok(())
}

fn plactic_charge() -> Outcome {
    for w in words(7, 4).into_iter().filter(|w| has_partition_evaluation(w)) {
        let pw = Tableau::from_word(&w);
        ensure(charge(&w) == pw.charge(), || format!("{} has charge {} but P(w) has {}", format_word(&w), charge(&w), pw.charge()))?;
    }
    Ok(())
}

fn cyclage_charge() -> Outcome {
    for n in 1..=7 {
        for mu in Partition::all(n) {
            for x in generate_h(&mu)?.iter() {
                if let Some(y) = x.cyclage() {
                    ensure(y.charge() == x.charge() + 1, || format!("cyclage {} -> {}", x, y))?;
                }
                if let Some(y) = x.cocyclage() {
                    ensure(y.charge() + 1 == x.charge(), || format!("cocyclage {} -> {}", x, y))?;
                }
            }
        }
    }
    Ok(())
}

fn hooks() -> Outcome {
    for k in 1..=5 {
        for m in 1..k {
            for r in 0..k {
                let hook = Partition::from_unsorted(std::iter::once(m).chain(std::iter::repeat_n(1, r)).collect());
                if !hook.is_k_irreducible(k) {
                    continue;
                }
                let closed = hook_atom(m, r, k)?;
                let recursive = generate_atom(&hook, k)?;
                ensure(closed == *recursive, || format!("hook {} at k={}: {} vs {}", hook, k, closed, recursive))?;
            }
        }
    }
    Ok(())
}

fn rectangles() -> Outcome {
    for k in 1..=4 {
        for rect in Partition::k_rectangles(k) {
            for n in 0..=5 {
                for lambda in Partition::bounded(n, k) {
                    let v = rectangle_factor_check(&lambda, &rect, k)?;
                    ensure(v.is_ok(), || format!("{:?}", v))?;
                }
            }
        }
    }
    Ok(())
}

fn c12() -> Outcome {
    let parts: [Check; 6] = [
        ("coxeter", coxeter),
        ("rsk", rsk_roundtrip),
        ("plactic charge", plactic_charge),
        ("cyclage", cyclage_charge),
        ("hooks", hooks),
        ("rectangles", rectangles),
    ];
    for (name, f) in parts {
        f().map_err(|e| format!("{}: {}", name, e))?;
    }
    Ok(())
}

fn main() {
    let criteria: [Check; 12] = [
        ("charge(12114123234) = 7", c1),
        ("sigma_2(123343222423) = 123343222433", c2),
        ("katabolism and restricted katabolism of 9472581236 and 9472581136", c3),
        ("atoms A_1111, B_2 A_1111 and A_21111 at k=3", c4),
        ("atom expansions of H_211 at k = 2, 3, 4, 5, 6", c5),
        ("A_322111 at k=4 and level sequences", c6),
        ("k-conjugation example and involution for |lambda| <= 8, k <= 6", c7),
        ("column Pieri example and e_2 product at t=1", c8),
        ("positivity sweep |mu| <= 6, k <= 6", c9),
        ("copy decomposition sweep |mu| <= 6, k <= 4 and the 863925147 copy", c10),
        ("irreducible counts, rank series, flip invariance, 2413/3214", c11),
        ("property suites", c12),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS criterion {}: {} ({:.2}s)", i + 1, name, secs),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {}: {} ({:.2}s): {}", i + 1, name, secs, e);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
