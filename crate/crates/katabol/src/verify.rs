use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::atoms::copies::{decompose_copies, decompose_set};
use crate::atoms::duality::{duality_verdict, unimodality_check};
use crate::atoms::generalized::generalized_kostka;
use crate::atoms::irreducible::{flip_check, hilbert_check, max_irreducible_check};
use crate::atoms::pieri::{coproduct_check, level_difference, pieri_check_t1, rectangle_factor_check, PieriKind};
use crate::atoms::{atom_function, k_kostka};
use crate::error::{Error, Result};
use crate::operators::{generate_atom, generate_h, hook_atom, promote_rect_set};
use crate::partition::Partition;
use crate::poly::BivariatePoly;
use crate::symfunc::{hall_littlewood, macdonald_h, SchurExpansion};
use crate::tableau::TableauSet;
use crate::verdict::{Report, Status, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Positivity,
    Decomposition,
    Pieri,
    Involution,
    Duality,
    Unimodality,
    Flip,
    Hooks,
    Coproduct,
    Rectangles,
    All,
}

impl Suite {
    pub const EACH: [Suite; 10] = [
        Suite::Positivity,
        Suite::Decomposition,
        Suite::Pieri,
        Suite::Involution,
        Suite::Duality,
        Suite::Unimodality,
        Suite::Flip,
        Suite::Hooks,
        Suite::Coproduct,
        Suite::Rectangles,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Positivity => "positivity",
            Suite::Decomposition => "decomposition",
            Suite::Pieri => "pieri",
            Suite::Involution => "involution",
            Suite::Duality => "duality",
            Suite::Unimodality => "unimodality",
            Suite::Flip => "flip",
            Suite::Hooks => "hooks",
            Suite::Coproduct => "coproduct",
            Suite::Rectangles => "rectangles",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain([&Suite::All])
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::invalid(format!("unknown suite {:?}", s)))
    }
}

#[derive(Clone, Debug)]
pub struct VerifySpec {
    pub max_degree: usize,
    pub k_min: usize,
    pub k_max: usize,
    pub jobs: usize,
    /// Report 0 ms for every cell, making reports byte-identical across runs.
    pub no_timing: bool,
}

impl VerifySpec {
    pub fn new(max_degree: usize, k_min: usize, k_max: usize) -> Result<Self> {
        if k_min == 0 || k_min > k_max {
            return Err(Error::invalid(format!("bad k range {}..{}", k_min, k_max)));
        }
        Ok(VerifySpec { max_degree, k_min, k_max, jobs: 0, no_timing: false })
    }

    fn ks(&self) -> std::ops::RangeInclusive<usize> {
        self.k_min..=self.k_max
    }

    /// (λ, k) with λ k-bounded, |λ| ≤ max_degree.
    fn bounded_cells(&self) -> Vec<(Partition, usize)> {
        let mut out = vec![];
        for n in 0..=self.max_degree {
            for k in self.ks() {
                for l in Partition::bounded(n, k) {
                    out.push((l, k));
                }
            }
        }
        out
    }
}

/// Parses "a..b", "a..=b" or a single integer.
pub fn parse_k_range(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::invalid(format!("bad k range {:?}", s));
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
    let (a, b) = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once("..") {
        (num(a)?, num(b)?)
    } else {
        let a = num(s)?;
        (a, a)
    };
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

type Job = Box<dyn Fn() -> Result<Verdict> + Send + Sync>;

fn job(f: impl Fn() -> Result<Verdict> + Send + Sync + 'static) -> Job {
    Box::new(f)
}

fn positivity_cell(mu: &Partition, k: usize) -> Result<Verdict> {
    let params = json!({"mu": mu, "k": k});
    let claim = "Macdonald atom expansion is in N[q,t] and below K(q,t)";
    let h = macdonald_h(mu)?;
    let e = match k_kostka(mu, k, true) {
        Ok(e) => e,
        Err(Error::NotBounded(m, _)) => return Ok(Verdict::fails(claim, params, m)),
        Err(e) => return Err(e),
    };
    for (lambda, c) in e.iter() {
        if !c.has_nonnegative_coefficients() || !c.le_coefficientwise(&h.get(lambda)) {
            return Ok(Verdict::fails(claim, params, format!("coefficient {} on A_{} against K = {}", c, lambda, h.get(lambda))));
        }
    }
    let lead = e.get(mu);
    if lead.coeff(0, 0) != 1.into() {
        return Ok(Verdict::fails(claim, params, format!("K^(k)_mumu = {} lacks constant term 1", lead)));
    }
    Ok(Verdict::holds(claim, params))
}

fn standard_count(lambda: &Partition) -> u64 {
    let n = lambda.size() as u64;
    let mut hooks = 1u128;
    for (r, c) in lambda.cells() {
        hooks *= lambda.hook(r, c) as u128;
    }
    ((1..=n as u128).product::<u128>() / hooks) as u64
}

fn kostka_at_one_cell(mu: &Partition) -> Result<Verdict> {
    let params = json!({"mu": mu});
    let h = macdonald_h(mu)?;
    let one = num_bigint::BigInt::from(1);
    for (lambda, c) in h.iter() {
        let v = c.eval(&one, &one);
        if v != standard_count(lambda).into() {
            return Ok(Verdict::fails("K(1,1) counts standard tableaux", params, format!("{} gives {}", lambda, v)));
        }
    }
    Ok(Verdict::holds("K(1,1) counts standard tableaux", params))
}

fn atom_bound_cell(lambda: &Partition, k: usize) -> Result<Verdict> {
    let params = json!({"lambda": lambda, "k": k});
    let claim = "atom is unitriangular with N[t] coefficients below K(t)";
    let a = atom_function(lambda, k)?;
    if !a.get(lambda).is_one() || a.support().first() != Some(lambda) {
        return Ok(Verdict::fails(claim, params, format!("leading term of {}", a)));
    }
    let hl = hall_littlewood(lambda)?;
    for (mu, c) in a.iter() {
        if !c.has_nonnegative_coefficients() || !c.le_coefficientwise(&hl.get(mu)) {
            return Ok(Verdict::fails(claim, params, format!("coefficient {} on S_{} against {}", c, mu, hl.get(mu))));
        }
    }
    Ok(Verdict::holds(claim, params))
}

fn decomposition_cell(mu: &Partition, k: usize) -> Result<Verdict> {
    let params = json!({"mu": mu, "k": k});
    let claim = "H_mu decomposes into copies reproducing H_mu[X;t]";
    let d = decompose_copies(mu, k)?;
    if let Some(t) = &d.stuck {
        return Ok(Verdict::fails(claim, params, format!("no copy completes at {}", t)));
    }
    if d.exhausted {
        return Ok(Verdict::ambiguous(claim, params, "search budget exhausted"));
    }
    let all = generate_h(mu)?;
    let covered: usize = d.copies.iter().map(|c| c.members.len()).sum();
    if covered != all.len() || d.copies.iter().any(|c| c.members.iter().any(|t| !all.contains(t))) {
        return Ok(Verdict::fails(claim, params, "copies do not cover H_mu exactly"));
    }
    let mut f = SchurExpansion::new();
    let mut kostka = SchurExpansion::new();
    for c in &d.copies {
        let shift = BivariatePoly::monomial(1, 0, c.charge);
        f = f.plus(&atom_function(&c.shape(), k)?.scale(&shift));
        kostka.add_term(c.shape(), &shift);
    }
    if f != hall_littlewood(mu)? {
        return Ok(Verdict::fails(claim, params, format!("copies sum to {}", f)));
    }
    if kostka != k_kostka(mu, k, false)? {
        return Ok(Verdict::fails(claim, params, format!("charges of copy indices give {}", kostka)));
    }
    if d.ambiguous {
        return Ok(Verdict::ambiguous(claim, params, "an extraction step admitted several image sets"));
    }
    Ok(Verdict::holds(claim, params))
}

fn refinement_cell(lambda: &Partition, k: usize, k2: usize) -> Result<Verdict> {
    let params = json!({"lambda": lambda, "k": k, "k2": k2});
    let claim = "A^(k) - A^(k2) expands positively in level-k2 atoms";
    let diff = level_difference(lambda, k, k2)?;
    let bad = diff.iter().find(|(_, c)| !c.has_nonnegative_coefficients());
    Ok(Verdict::check(claim, params, bad.is_none(), || format!("{}", diff)))
}

fn transpose_cell(n: usize, k: usize) -> Result<Verdict> {
    let params = json!({"n": n, "k": k});
    let claim = "transposed standard copies are copies of the k-conjugate atom";
    let d = decompose_copies(&Partition::rectangle(1, n), k)?;
    for c in &d.copies {
        let transposed = TableauSet::new(c.members.iter().map(|t| t.transpose()).collect::<Result<Vec<_>>>()?)?;
        let want = c.shape().k_conjugate(k)?;
        let e = decompose_set(&transposed, k)?;
        if !e.is_complete() || e.copies.len() != 1 || e.copies[0].shape() != want {
            return Ok(Verdict::fails(claim, params, format!("copy indexed by {}", c.index)));
        }
    }
    Ok(Verdict::holds(claim, params))
}

fn involution_cell(lambda: &Partition, k: usize) -> Result<Verdict> {
    let params = json!({"lambda": lambda, "k": k});
    let once = lambda.k_conjugate(k)?;
    let twice = once.k_conjugate(k)?;
    Ok(Verdict::check("k-conjugation is an involution", params, &twice == lambda && once.is_bounded(k), || {
        format!("{} -> {} -> {}", lambda, once, twice)
    }))
}

fn hook_cell(m: usize, r: usize, k: usize) -> Result<Verdict> {
    let lambda = Partition::new(std::iter::once(m).chain(std::iter::repeat_n(1, r)).collect())?;
    let params = json!({"lambda": lambda, "k": k});
    let closed = hook_atom(m, r, k)?;
    let recursive = generate_atom(&lambda, k)?;
    Ok(Verdict::check("hook atom closed form", params, *recursive == closed, || {
        format!("closed {} recursive {}", closed, recursive)
    }))
}

fn rectangle_copy_cell(mu: &Partition, ell: usize, k: usize) -> Result<Verdict> {
    let h = k + 1 - ell;
    let rect = Partition::rectangle(ell, h);
    let params = json!({"mu": mu, "rectangle": rect, "k": k});
    let claim = "rectangular promotion of a copy is a single copy";
    let d = decompose_copies(mu, k)?;
    for c in &d.copies {
        let promoted = promote_rect_set(&c.members, ell, h)?;
        let e = decompose_set(&promoted, k)?;
        let want = c.shape().union(&rect);
        if !e.is_complete() || e.copies.len() != 1 || e.copies[0].shape() != want {
            return Ok(Verdict::fails(claim, params, format!("copy indexed by {}", c.index)));
        }
    }
    Ok(Verdict::holds(claim, params))
}

fn generalized_cell(seq: Vec<Partition>, k: usize) -> Result<Verdict> {
    let parts: Vec<usize> = seq.iter().flat_map(|r| r.parts().iter().copied()).collect();
    let mu = Partition::new(parts)?;
    let params = json!({"rectangles": seq, "k": k});
    let got = generalized_kostka(&seq, k)?;
    let want = atom_function(&mu, k)?;
    Ok(Verdict::check("generalized Kostka of k-rectangles equals the atom", params, got == want, || {
        format!("{} vs {}", got, want)
    }))
}

/// Dominant sequences of k-rectangles with total size at most `max`.
fn rectangle_sequences(k: usize, max: usize) -> Vec<Vec<Partition>> {
    fn rec(k: usize, left: usize, widest: usize, cur: &mut Vec<Partition>, out: &mut Vec<Vec<Partition>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for ell in (1..=widest).rev() {
            let r = Partition::rectangle(ell, k + 1 - ell);
            if r.size() <= left {
                cur.push(r.clone());
                rec(k, left - r.size(), ell, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = vec![];
    rec(k, max, k, &mut vec![], &mut out);
    out
}

fn jobs_for(suite: Suite, spec: &VerifySpec) -> Vec<Job> {
    let mut jobs: Vec<Job> = vec![];
    let cells = spec.bounded_cells();
    match suite {
        Suite::Positivity => {
            for (mu, k) in cells.iter().cloned() {
                let m = mu.clone();
                jobs.push(job(move || positivity_cell(&m, k)));
                jobs.push(job(move || atom_bound_cell(&mu, k)));
            }
            for n in 0..=spec.max_degree {
                for mu in Partition::all(n) {
                    jobs.push(job(move || kostka_at_one_cell(&mu)));
                }
            }
        }
        Suite::Decomposition => {
            for (mu, k) in cells.iter().cloned() {
                jobs.push(job(move || decomposition_cell(&mu, k)));
            }
            for (lambda, k) in cells.iter().cloned() {
                for k2 in (k + 1)..=spec.k_max {
                    let l = lambda.clone();
                    jobs.push(job(move || refinement_cell(&l, k, k2)));
                }
            }
        }
        Suite::Pieri => {
            for (lambda, k) in cells.iter().cloned() {
                for ell in 1..=k.min(spec.max_degree.saturating_sub(lambda.size())) {
                    for kind in [PieriKind::Row, PieriKind::Column] {
                        let l = lambda.clone();
                        jobs.push(job(move || pieri_check_t1(&l, ell, k, kind)));
                    }
                }
            }
        }
        Suite::Involution => {
            for (lambda, k) in cells.iter().cloned() {
                jobs.push(job(move || involution_cell(&lambda, k)));
            }
        }
        Suite::Duality => {
            for (lambda, k) in cells.iter().cloned() {
                jobs.push(job(move || duality_verdict(&lambda, k)));
            }
            for n in 0..=spec.max_degree {
                for k in spec.ks() {
                    jobs.push(job(move || transpose_cell(n, k)));
                }
            }
        }
        Suite::Unimodality => {
            for (lambda, k) in cells.iter().cloned() {
                jobs.push(job(move || unimodality_check(&lambda, k)));
            }
        }
        Suite::Flip => {
            // λ_M has (k+1)k(k-1)/6 boxes; k = 6 (35 boxes) is out of reach.
            for k in spec.ks().filter(|k| (2..=5).contains(k)) {
                jobs.push(job(move || hilbert_check(k)));
                jobs.push(job(move || flip_check(k)));
                jobs.push(job(move || max_irreducible_check(k)));
            }
        }
        Suite::Hooks => {
            for k in spec.ks() {
                for m in 1..k {
                    for r in 0..k {
                        let hook = Partition::new(std::iter::once(m).chain(std::iter::repeat_n(1, r)).collect());
                        if hook.is_ok_and(|h| h.is_k_irreducible(k)) {
                            jobs.push(job(move || hook_cell(m, r, k)));
                        }
                    }
                }
            }
        }
        Suite::Coproduct => {
            for (lambda, k) in cells.iter().cloned() {
                jobs.push(job(move || coproduct_check(&lambda, k)));
            }
        }
        Suite::Rectangles => {
            for (lambda, k) in cells.iter().cloned() {
                for rect in Partition::k_rectangles(k) {
                    if lambda.size() + rect.size() <= spec.max_degree + k + 1 {
                        let l = lambda.clone();
                        jobs.push(job(move || rectangle_factor_check(&l, &rect, k)));
                    }
                }
            }
            for (mu, k) in cells.iter().cloned() {
                for ell in 1..=k {
                    if mu.size() + ell * (k + 1 - ell) <= spec.max_degree + 2 {
                        let m = mu.clone();
                        jobs.push(job(move || rectangle_copy_cell(&m, ell, k)));
                    }
                }
            }
            for k in spec.ks() {
                for seq in rectangle_sequences(k, spec.max_degree + 2) {
                    jobs.push(job(move || generalized_cell(seq.clone(), k)));
                }
            }
        }
        Suite::All => {
            for s in Suite::EACH {
                jobs.extend(jobs_for(s, spec));
            }
        }
    }
    jobs
}

fn run_job(j: &Job, no_timing: bool) -> (Verdict, u64) {
    let t0 = Instant::now();
    let v = match j() {
        Ok(v) => v,
        Err(e) => Verdict::fails("evaluation", Value::Null, format!("error: {}", e)),
    };
    let ms = if no_timing { 0 } else { t0.elapsed().as_millis() as u64 };
    (v, ms)
}

/// Runs every cell of `suite`; cells keep their generation order.
pub fn run_suite(suite: Suite, spec: &VerifySpec) -> Result<Report> {
    let jobs = jobs_for(suite, spec);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if spec.jobs > 0 {
        builder = builder.num_threads(spec.jobs);
    }
    let pool = builder.build().map_err(|e| Error::Io(e.to_string()))?;
    let results: Vec<(Verdict, u64)> = pool.install(|| jobs.par_iter().map(|j| run_job(j, spec.no_timing)).collect());
    let mut report = Report::new(suite.name());
    for (mut v, ms) in results {
        if let Value::Object(map) = &mut v.parameters {
            map.insert("claim".into(), Value::String(v.claim.clone()));
        } else {
            v.parameters = json!({"claim": v.claim});
        }
        report.push(v, ms);
    }
    Ok(report)
}

pub fn has_counterexample(report: &Report) -> bool {
    report.cells.iter().any(|c| c.status != Status::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_k_range("1..6").unwrap(), (1, 6));
        assert_eq!(parse_k_range("2..=4").unwrap(), (2, 4));
        assert_eq!(parse_k_range("3").unwrap(), (3, 3));
        assert!(parse_k_range("4..2").is_err());
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn degree_zero_is_trivial() {
        let spec = VerifySpec::new(0, 1, 3).unwrap();
        let r = run_suite(Suite::All, &spec).unwrap();
        assert!(r.all_hold(), "{:?}", r.failures());
    }

    #[test]
    fn small_sweep() {
        let spec = VerifySpec::new(4, 1, 4).unwrap();
        for s in Suite::EACH {
            let r = run_suite(s, &spec).unwrap();
            assert!(r.all_hold(), "{}: {:?}", s, r.failures());
        }
    }
}
