use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::poly::BivariatePoly;
use crate::symfunc::{lr_product, SchurExpansion};
use crate::verdict::Verdict;

use super::{atom_function, expand_in_atoms, expand_in_atoms_t1};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PieriKind {
    Row,
    Column,
}

/// E (row) or Ē (column): the k-bounded μ with μ/λ a horizontal (vertical)
/// ℓ-strip whose k-conjugates differ by a vertical (horizontal) ℓ-strip.
pub fn pieri_sets(lambda: &Partition, ell: usize, k: usize, kind: PieriKind) -> Result<Vec<Partition>> {
    if ell > k {
        return Err(Error::invalid(format!("strip length {} exceeds k = {}", ell, k)));
    }
    if !lambda.is_bounded(k) {
        return Err(Error::NotBounded(lambda.to_string(), k));
    }
    let lc = lambda.k_conjugate(k)?;
    let candidates = match kind {
        PieriKind::Row => lambda.add_horizontal_strips(ell),
        PieriKind::Column => lambda.add_vertical_strips(ell),
    };
    let mut out = vec![];
    for mu in candidates {
        if !mu.is_bounded(k) {
            continue;
        }
        let mc = mu.k_conjugate(k)?;
        let ok = match kind {
            PieriKind::Row => mc.is_vertical_strip_over(&lc),
            PieriKind::Column => mc.is_horizontal_strip_over(&lc),
        };
        if ok {
            out.push(mu);
        }
    }
    out.sort();
    Ok(out)
}

/// h_ℓ (row) or e_ℓ (column) as a Schur function.
fn strip_function(ell: usize, kind: PieriKind) -> SchurExpansion {
    let p = match kind {
        PieriKind::Row => Partition::rectangle(ell, 1),
        PieriKind::Column => Partition::rectangle(1, ell),
    };
    SchurExpansion::schur(p)
}

/// Checks h_ℓ A_λ = Σ_{μ ∈ E} A_μ (or the e_ℓ version) at t = 1.
pub fn pieri_check_t1(lambda: &Partition, ell: usize, k: usize, kind: PieriKind) -> Result<Verdict> {
    let params = json!({"lambda": lambda, "ell": ell, "k": k, "kind": kind});
    let claim = "pieri rule at t=1";
    let want = pieri_sets(lambda, ell, k, kind)?;
    let product = strip_function(ell, kind).multiply(&atom_function(lambda, k)?.at_t_one());
    let got = match expand_in_atoms_t1(&product, k) {
        Ok(g) => g,
        Err(Error::NotBounded(m, _)) => return Ok(Verdict::fails(claim, params, format!("not in the atom span: {}", m))),
        Err(e) => return Err(e),
    };
    let mut expected = SchurExpansion::new();
    for mu in &want {
        expected.add_term(mu.clone(), &BivariatePoly::one());
    }
    Ok(Verdict::check(claim, params, got == expected, || format!("expansion {} but strips {:?}", got, want.iter().map(|m| m.to_string()).collect::<Vec<_>>())))
}

/// A_λ A_μ at t = 1 in level-k atoms.
pub fn atom_product_t1(lambda: &Partition, mu: &Partition, k: usize) -> Result<SchurExpansion> {
    let product = atom_function(lambda, k)?.at_t_one().multiply(&atom_function(mu, k)?.at_t_one());
    expand_in_atoms_t1(&product, k)
}

/// 0 ≤ c^{ν(k)}_{λμ} ≤ c^ν_{λμ} for every ν.
pub fn atom_product_check(lambda: &Partition, mu: &Partition, k: usize) -> Result<Verdict> {
    let params = json!({"lambda": lambda, "mu": mu, "k": k});
    let claim = "atom product coefficients lie between 0 and the LR coefficient";
    let got = match atom_product_t1(lambda, mu, k) {
        Ok(g) => g,
        Err(Error::NotBounded(m, _)) => return Ok(Verdict::fails(claim, params, format!("not in the atom span: {}", m))),
        Err(e) => return Err(e),
    };
    let lr = lr_product(lambda, mu);
    for (nu, c) in got.iter() {
        let bound = BivariatePoly::constant(*lr.get(nu).unwrap_or(&0));
        if !c.has_nonnegative_coefficients() || !c.le_coefficientwise(&bound) {
            return Ok(Verdict::fails(claim, params, format!("coefficient {} on {} against LR {}", c, nu, bound)));
        }
    }
    Ok(Verdict::holds(claim, params))
}

/// A tensor S_α ⊗ S_β expansion keyed by (α, β).
pub type TensorExpansion = BTreeMap<(Partition, Partition), BivariatePoly>;

fn add_tensor(out: &mut TensorExpansion, key: (Partition, Partition), c: &BivariatePoly) {
    let entry = out.entry(key.clone()).or_insert_with(BivariatePoly::zero);
    *entry += c;
    if entry.is_zero() {
        out.remove(&key);
    }
}

/// ΔS_ν = Σ c^ν_{αβ} S_α ⊗ S_β.
pub fn schur_coproduct(f: &SchurExpansion) -> TensorExpansion {
    let mut out = TensorExpansion::new();
    for (nu, c) in f.iter() {
        let n = nu.size();
        for i in 0..=n {
            for alpha in Partition::all(i) {
                if !nu.contains(&alpha) {
                    continue;
                }
                for beta in Partition::all(n - i) {
                    if let Some(&m) = lr_product(&alpha, &beta).get(nu) {
                        add_tensor(&mut out, (alpha.clone(), beta), &c.scale(&m.into()));
                    }
                }
            }
        }
    }
    out
}

/// g^λ_{μρ}(t): A_λ[X+Y; t] = Σ g^λ_{μρ}(t) A_μ[X; t] A_ρ[Y; t].
pub fn coproduct_g(lambda: &Partition, k: usize) -> Result<TensorExpansion> {
    let mut residual = schur_coproduct(&atom_function(lambda, k)?);
    let mut out = TensorExpansion::new();
    while let Some(((mu, rho), c)) = residual.iter().next().map(|(a, b)| (a.clone(), b.clone())) {
        if !mu.is_bounded(k) || !rho.is_bounded(k) {
            return Err(Error::NotBounded(format!("leftover term {} (x) {}", mu, rho), k));
        }
        let (a, b) = (atom_function(&mu, k)?, atom_function(&rho, k)?);
        for (m2, ca) in a.iter() {
            for (r2, cb) in b.iter() {
                add_tensor(&mut residual, (m2.clone(), r2.clone()), &-(&(&c * ca) * cb));
            }
        }
        add_tensor(&mut out, (mu, rho), &c);
    }
    Ok(out)
}

pub fn coproduct_check(lambda: &Partition, k: usize) -> Result<Verdict> {
    let params = json!({"lambda": lambda, "k": k});
    let claim = "atom coproduct coefficients are in N[t]";
    let g = match coproduct_g(lambda, k) {
        Ok(g) => g,
        Err(Error::NotBounded(m, _)) => return Ok(Verdict::fails(claim, params, m)),
        Err(e) => return Err(e),
    };
    let bad = g.iter().find(|(_, c)| !c.has_nonnegative_coefficients());
    Ok(Verdict::check(claim, params, bad.is_none(), || {
        let ((m, r), c) = bad.unwrap();
        format!("g_{{{},{}}} = {}", m, r, c)
    }))
}

/// S_R A_λ = A_{λ∪R} at t = 1 for a k-rectangle R.
pub fn rectangle_factor_check(lambda: &Partition, rect: &Partition, k: usize) -> Result<Verdict> {
    let params = json!({"lambda": lambda, "rectangle": rect, "k": k});
    let claim = "rectangle factorization at t=1";
    if !rect.is_k_rectangle(k) {
        return Err(Error::invalid(format!("{} is not a {}-rectangle", rect, k)));
    }
    let union = lambda.union(rect);
    let lhs = SchurExpansion::schur(rect.clone()).multiply(&atom_function(lambda, k)?.at_t_one());
    let rhs = atom_function(&union, k)?.at_t_one();
    Ok(Verdict::check(claim, params, lhs == rhs, || format!("S_R A = {} but A_union = {}", lhs, rhs)))
}

/// A_λ^{(k)} − A_λ^{(k')} in level-k' atoms; every coefficient should lie in N[t].
pub fn level_difference(lambda: &Partition, k: usize, k2: usize) -> Result<SchurExpansion> {
    let diff = atom_function(lambda, k)?.minus(&atom_function(lambda, k2)?);
    expand_in_atoms(&diff, k2)
}
