use std::collections::BTreeSet;

use serde_json::json;

use crate::error::{Error, Result};
use crate::operators::promote_rect_set;
use crate::partition::Partition;
use crate::symfunc::{digamma, SchurExpansion};
use crate::tableau::{Tableau, TableauSet};
use crate::verdict::Verdict;

use super::{atom_function, expand_in_atoms_t1};
use super::poset::RankedPoset;

/// Arrows λ → μ when A_μ appears in e_1 A_λ at t = 1, reducible atoms
/// sent to zero.
pub fn irreducible_e1_poset(k: usize) -> Result<RankedPoset<Partition>> {
    if !(2..=6).contains(&k) {
        return Err(Error::invalid(format!("e1 poset needs 2 <= k <= 6 (got {})", k)));
    }
    let vertices = Partition::k_irreducibles(k);
    let e1 = SchurExpansion::schur(Partition::rectangle(1, 1));
    let mut edges = vec![];
    for (i, lambda) in vertices.iter().enumerate() {
        let product = e1.multiply(&atom_function(lambda, k)?.at_t_one());
        let expansion = expand_in_atoms_t1(&product, k)?;
        for (mu, _) in expansion.iter() {
            if let Some(j) = vertices.iter().position(|v| v == mu) {
                edges.push((i, j));
            }
        }
    }
    let ranks = vertices.iter().map(|v| v.size() as i64).collect();
    Ok(RankedPoset::new(vertices, ranks, edges))
}

/// Coefficients of ∏_{i=1}^{k-1} (1 + q^i + ... + q^{(k-i)i}).
pub fn hilbert_series(k: usize) -> Vec<usize> {
    let mut out = vec![1usize];
    for i in 1..k {
        let mut next = vec![0; out.len() + (k - i) * i];
        for (d, &c) in out.iter().enumerate() {
            for j in 0..=(k - i) {
                next[d + j * i] += c;
            }
        }
        out = next;
    }
    out
}

pub fn hilbert_check(k: usize) -> Result<Verdict> {
    let poset = irreducible_e1_poset(k)?;
    let sizes = poset.rank_sizes();
    let want = hilbert_series(k);
    let params = json!({"k": k});
    Ok(Verdict::check("rank generating function of the irreducible poset", params, sizes == want, || {
        format!("ranks {:?}, series {:?}", sizes, want)
    }))
}

/// Edges of the e_1 poset are preserved by the k-flip.
pub fn flip_check(k: usize) -> Result<Verdict> {
    let poset = irreducible_e1_poset(k)?;
    let vs = poset.vertices();
    let edges: BTreeSet<(Partition, Partition)> = poset
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (vs[a].clone(), vs[b].clone());
            if x < y { (x, y) } else { (y, x) }
        })
        .collect();
    let params = json!({"k": k});
    for (a, b) in &edges {
        let (fa, fb) = (a.flip(k)?, b.flip(k)?);
        let key = if fa < fb { (fa, fb) } else { (fb, fa) };
        if !edges.contains(&key) {
            return Ok(Verdict::fails("flip invariance of the e1 poset", params, format!("{} - {} maps to a non-edge", a, b)));
        }
    }
    Ok(Verdict::holds("flip invariance of the e1 poset", params))
}

/// A_{λ_M}^{(k)} = A_{λ_M}^{(k-1)} = ϝ(𝔹_{(k-1)} 𝔹_{((k-2)^2)} ⋯ 𝔹_{(1^{k-1})} ℍ_0).
pub fn max_irreducible_check(k: usize) -> Result<Verdict> {
    if k < 2 {
        return Err(Error::invalid("needs k >= 2"));
    }
    let lm = Partition::max_irreducible(k);
    let mut set = TableauSet::singleton(Tableau::empty());
    for ell in 1..k {
        set = promote_rect_set(&set, ell, k - ell)?;
    }
    let built = digamma(&set);
    let a = atom_function(&lm, k)?;
    let b = atom_function(&lm, k - 1)?;
    let params = json!({"k": k, "lambda": lm});
    Ok(Verdict::check("maximal irreducible atom identity", params, a == b && a == built, || {
        format!("level k {}, level k-1 {}, promoted {}", a, b, built)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_levels() {
        let p2 = irreducible_e1_poset(2).unwrap();
        assert_eq!(p2.len(), 2);
        assert_eq!(p2.edges().len(), 1);
        assert_eq!(hilbert_series(3), vec![1, 1, 2, 1, 1]);
        assert!(hilbert_check(3).unwrap().is_ok());
        assert!(flip_check(3).unwrap().is_ok());
        for k in 2..=4 {
            assert!(max_irreducible_check(k).unwrap().is_ok(), "k={}", k);
        }
    }
}
