use serde::Serialize;
use serde_json::json;

use crate::error::Result;
use crate::operators::generate_atom;
use crate::partition::Partition;
use crate::poly::LaurentPoly;
use crate::symfunc::SchurExpansion;
use crate::verdict::Verdict;

use super::atom_function;

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub lambda: Partition,
    pub k: usize,
    pub dual: Partition,
    /// The exponent * in ω A_λ[X; t] = t^* A_{λ^{ω_k}}[X; 1/t].
    pub exponent: i64,
    pub holds: bool,
    pub max_charge_shape: Option<Partition>,
    pub max_charge_unique: bool,
    pub max_charge_shape_ok: bool,
}

/// t^e f(1/t), or None when a negative power appears.
fn reverse_t(f: &SchurExpansion, e: i64) -> Option<SchurExpansion> {
    let mut out = SchurExpansion::new();
    for (mu, c) in f.iter() {
        out.add_term(mu.clone(), &LaurentPoly::from_poly(c).invert_t().shift_t(e).to_poly()?);
    }
    Some(out)
}

pub fn omega_duality_check(lambda: &Partition, k: usize) -> Result<DualityReport> {
    let dual = lambda.k_conjugate(k)?;
    let lhs = atom_function(lambda, k)?.omega();
    let b = atom_function(&dual, k)?;
    let exponent = b.iter().map(|(_, c)| c.degree_t() as i64).max().unwrap_or(0);
    let holds = reverse_t(&b, exponent).is_some_and(|r| r == lhs);

    let atom = generate_atom(lambda, k)?;
    let charges: Vec<usize> = atom.iter().map(|t| t.charge()).collect();
    let top = charges.iter().copied().max();
    let tops: Vec<usize> = (0..charges.len()).filter(|&i| Some(charges[i]) == top).collect();
    let max_charge_shape = tops.first().map(|&i| atom.tableaux()[i].shape());
    let expected = dual.conjugate();
    Ok(DualityReport {
        lambda: lambda.clone(),
        k,
        dual,
        exponent,
        holds,
        max_charge_unique: tops.len() == 1,
        max_charge_shape_ok: tops.len() == 1 && max_charge_shape.as_ref() == Some(&expected),
        max_charge_shape,
    })
}

pub fn duality_verdict(lambda: &Partition, k: usize) -> Result<Verdict> {
    let r = omega_duality_check(lambda, k)?;
    let params = json!({"lambda": lambda, "k": k});
    let ok = r.holds && r.max_charge_shape_ok;
    Ok(Verdict::check("omega duality and maximal-charge shape", params, ok, || {
        serde_json::to_string(&r).unwrap_or_default()
    }))
}

/// #_i: number of tableaux of the atom with charge i.
pub fn levels(lambda: &Partition, k: usize) -> Result<Vec<usize>> {
    let f = atom_function(lambda, k)?;
    let mut out = vec![];
    for (_, c) in f.iter() {
        for (_, e, n) in c.terms() {
            if out.len() <= e {
                out.resize(e + 1, 0);
            }
            out[e] += usize::try_from(n).unwrap_or(0);
        }
    }
    Ok(out)
}

pub fn is_unimodal(seq: &[usize]) -> bool {
    let peak = seq.iter().enumerate().max_by_key(|&(i, v)| (*v, std::cmp::Reverse(i))).map_or(0, |(i, _)| i);
    seq[..=peak.min(seq.len().saturating_sub(1))].windows(2).all(|w| w[0] <= w[1])
        && seq[peak..].windows(2).all(|w| w[0] >= w[1])
}

pub fn unimodality_check(lambda: &Partition, k: usize) -> Result<Verdict> {
    let l = levels(lambda, k)?;
    let params = json!({"lambda": lambda, "k": k});
    let ok = is_unimodal(&l) && l.last() == Some(&1);
    Ok(Verdict::check("level sequence is unimodal and ends with 1", params, ok, || format!("{:?}", l)))
}
