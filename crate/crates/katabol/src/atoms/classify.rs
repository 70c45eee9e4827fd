use std::collections::BTreeSet;
use std::fmt;

use once_cell::sync::Lazy;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::{katabolism, promote_indexed};
use crate::partition::Partition;
use crate::tableau::{Tableau, TableauSet};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Descriptor {
    /// (v_1, ..., v_m, ε) with v_i ∈ {1, 2}.
    Level2 { steps: Vec<u8>, epsilon: u8 },
    /// (T_1, ..., T_m, T): promotion operators, then an irreducible index.
    Level3 { chain: Vec<Tableau>, base: Tableau },
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Level2 { steps, epsilon } => {
                let parts: Vec<String> = steps.iter().map(|v| v.to_string()).chain([epsilon.to_string()]).collect();
                write!(f, "({})", parts.join(","))
            }
            Descriptor::Level3 { chain, base } => {
                let parts: Vec<String> = chain.iter().chain([base]).map(|t| t.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

fn tab(s: &str) -> Tableau {
    s.parse().expect("built-in tableau")
}

/// The ten indexed operators 𝔹_T of level 3.
pub static LEVEL3_OPERATORS: Lazy<Vec<Tableau>> = Lazy::new(|| {
    ["123", "124", "134", "3/2/1", "4/2/1", "4/3/1", "34/12", "24/13", "35/12", "25/13"].iter().map(|s| tab(s)).collect()
});

/// The eight irreducible level-3 atoms of standard evaluation, keyed by
/// their indexing tableau.
pub static LEVEL3_IRREDUCIBLES: Lazy<Vec<(Tableau, TableauSet)>> = Lazy::new(|| {
    let atoms: [(&str, &[&str]); 8] = [
        ("", &[""]),
        ("1", &["1"]),
        ("12", &["12"]),
        ("2/1", &["2/1"]),
        ("3/12", &["3/12"]),
        ("2/13", &["2/13"]),
        ("4/3/12", &["4/3/12", "3/124"]),
        ("4/2/13", &["4/2/13", "2/134"]),
    ];
    atoms
        .iter()
        .map(|(i, members)| (tab(i), TableauSet::new(members.iter().map(|s| tab(s)).collect()).unwrap()))
        .collect()
});

/// The restriction of `t` to the letters 1..=n.
fn letters_up_to(t: &Tableau, n: u8) -> Tableau {
    let rows: Vec<Vec<u8>> =
        t.rows().iter().map(|r| r.iter().copied().filter(|&x| x <= n).collect()).filter(|r: &Vec<u8>| !r.is_empty()).collect();
    Tableau::new(rows).expect("restriction to smallest letters")
}

/// Which tableau an operator may follow.
fn may_follow(op: &Tableau, next: &Tableau) -> bool {
    match op.to_string().as_str() {
        "35/12" | "25/13" => next.size() >= 1,
        "124" | "134" => next.size() >= 2 && letters_up_to(next, 2) == tab("2/1"),
        "4/2/1" | "4/3/1" => next.size() >= 2 && letters_up_to(next, 2) == tab("12"),
        _ => true,
    }
}

fn check_standard(t: &Tableau) -> Result<()> {
    if !t.is_standard() {
        return Err(Error::invalid(format!("{} is not standard", t)));
    }
    Ok(())
}

fn classify2(t: &Tableau) -> Descriptor {
    let mut steps = vec![];
    let mut u = t.clone();
    while u.size() >= 2 {
        let w = u.reading_word();
        let one = w.iter().position(|&x| x == 1).unwrap();
        let two = w.iter().position(|&x| x == 2).unwrap();
        let (v, shape) = if one < two { (2, Partition::from(&[2][..])) } else { (1, Partition::from(&[1, 1][..])) };
        steps.push(v);
        u = katabolism(&u, &shape).expect("1 and 2 sit in the corner").standardize();
    }
    Descriptor::Level2 { steps, epsilon: u.size() as u8 }
}

/// Every (T_1, ..., T_m, T) that katabolism can extract from `t`.
fn extract3(t: &Tableau) -> Vec<(Vec<Tableau>, Tableau)> {
    let mut out = vec![];
    for (index, set) in LEVEL3_IRREDUCIBLES.iter() {
        if set.contains(t) {
            out.push((vec![], index.clone()));
        }
    }
    for op in LEVEL3_OPERATORS.iter() {
        let shape = op.shape();
        if t.restrict(&shape).as_ref() != Some(op) {
            continue;
        }
        let rest = katabolism(t, &shape).expect("shape fits").standardize();
        for (chain, base) in extract3(&rest) {
            if may_follow(op, chain.first().unwrap_or(&base)) {
                let mut c = vec![op.clone()];
                c.extend(chain);
                out.push((c, base));
            }
        }
    }
    out
}

/// Level-2 or level-3 family of a standard tableau. At level 3 an error
/// is returned when no chain, or more than one, can be extracted.
pub fn classify_standard(t: &Tableau, k: usize) -> Result<Descriptor> {
    check_standard(t)?;
    match k {
        2 => Ok(classify2(t)),
        3 => {
            let found = extract3(t);
            match found.len() {
                1 => {
                    let (chain, base) = found.into_iter().next().unwrap();
                    Ok(Descriptor::Level3 { chain, base })
                }
                0 => Err(Error::arith(format!("no level-3 chain for {}", t))),
                _ => Err(Error::arith(format!(
                    "{} level-3 chains for {}: {}",
                    found.len(),
                    t,
                    found.iter().map(|(c, b)| Descriptor::Level3 { chain: c.clone(), base: b.clone() }.to_string()).collect::<Vec<_>>().join(" ")
                ))),
            }
        }
        _ => Err(Error::invalid(format!("classification is only defined for k = 2, 3 (got {})", k))),
    }
}

/// The family of a descriptor, built forward with the promotion operators.
pub fn family(d: &Descriptor) -> Result<TableauSet> {
    let (ops, mut set): (Vec<Tableau>, TableauSet) = match d {
        Descriptor::Level2 { steps, epsilon } => {
            let ops = steps.iter().map(|&v| tab(if v == 2 { "12" } else { "2/1" })).collect();
            let base = if *epsilon == 1 { tab("1") } else { Tableau::empty() };
            (ops, TableauSet::singleton(base))
        }
        Descriptor::Level3 { chain, base } => {
            let set = LEVEL3_IRREDUCIBLES
                .iter()
                .find(|(i, _)| i == base)
                .map(|(_, s)| s.clone())
                .ok_or_else(|| Error::invalid(format!("{} is not an irreducible index", base)))?;
            (chain.clone(), set)
        }
    };
    for op in ops.iter().rev() {
        set = set.flat_map(|t| promote_indexed(t, op))?;
    }
    Ok(set)
}

/// All descriptors whose families have `n` boxes.
pub fn descriptors(n: usize, k: usize) -> Result<Vec<Descriptor>> {
    let mut out = BTreeSet::new();
    match k {
        2 => {
            for epsilon in 0..=1u8 {
                if n < epsilon as usize || !(n - epsilon as usize).is_multiple_of(2) {
                    continue;
                }
                let m = (n - epsilon as usize) / 2;
                for mask in 0..(1u32 << m) {
                    let steps = (0..m).map(|i| if mask >> i & 1 == 1 { 2 } else { 1 }).collect();
                    out.insert(Descriptor::Level2 { steps, epsilon });
                }
            }
        }
        3 => {
            fn grow(n: usize, chain: Vec<Tableau>, base: &Tableau, out: &mut BTreeSet<Descriptor>) {
                let used: usize = chain.iter().map(|t| t.size()).sum::<usize>() + base.size();
                if used == n {
                    out.insert(Descriptor::Level3 { chain, base: base.clone() });
                    return;
                }
                let next = chain.first().cloned().unwrap_or_else(|| base.clone());
                for op in LEVEL3_OPERATORS.iter() {
                    if used + op.size() <= n && may_follow(op, &next) {
                        let mut c = vec![op.clone()];
                        c.extend(chain.iter().cloned());
                        grow(n, c, base, out);
                    }
                }
            }
            for (base, _) in LEVEL3_IRREDUCIBLES.iter() {
                if base.size() <= n {
                    grow(n, vec![], base, &mut out);
                }
            }
        }
        _ => return Err(Error::invalid(format!("classification is only defined for k = 2, 3 (got {})", k))),
    }
    Ok(out.into_iter().collect())
}
