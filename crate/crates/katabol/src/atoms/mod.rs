pub mod classify;
pub mod copies;
pub mod duality;
pub mod generalized;
pub mod irreducible;
pub mod pieri;
pub mod poset;

use std::collections::HashMap;
use std::sync::Mutex;

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::operators::generate_atom;
use crate::partition::Partition;
use crate::poly::BivariatePoly;
use crate::symfunc::{digamma, hall_littlewood, macdonald_h, SchurExpansion};

static ATOM_FUNCTIONS: Lazy<Mutex<HashMap<(usize, Partition), SchurExpansion>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// A_λ^{(k)}[X; t] = ϝ(𝔸_λ^{(k)}).
pub fn atom_function(lambda: &Partition, k: usize) -> Result<SchurExpansion> {
    let key = (k, lambda.clone());
    if let Some(f) = ATOM_FUNCTIONS.lock().unwrap().get(&key) {
        return Ok(f.clone());
    }
    let f = digamma(&*generate_atom(lambda, k)?);
    ATOM_FUNCTIONS.lock().unwrap().insert(key, f.clone());
    Ok(f)
}

/// Unitriangular solve against the given atom family, smallest
/// partition first.
pub fn expand_with<F>(f: &SchurExpansion, k: usize, atom: F) -> Result<SchurExpansion>
where
    F: Fn(&Partition) -> Result<SchurExpansion>,
{
    let mut residual = f.clone();
    let mut out = SchurExpansion::new();
    while let Some(lambda) = residual.support().into_iter().next() {
        if !lambda.is_bounded(k) {
            return Err(Error::NotBounded(format!("leftover term {}", lambda), k));
        }
        let c = residual.get(&lambda);
        let a = atom(&lambda)?;
        if !a.get(&lambda).is_one() || a.support().first() != Some(&lambda) {
            return Err(Error::arith(format!("atom {} is not unitriangular", lambda)));
        }
        residual = residual.minus(&a.scale(&c));
        out.add_term(lambda, &c);
    }
    Ok(out)
}

pub fn expand_in_atoms(f: &SchurExpansion, k: usize) -> Result<SchurExpansion> {
    expand_with(f, k, |l| atom_function(l, k))
}

/// Same solve with every atom specialised at t = 1.
pub fn expand_in_atoms_t1(f: &SchurExpansion, k: usize) -> Result<SchurExpansion> {
    expand_with(f, k, |l| Ok(atom_function(l, k)?.at_t_one()))
}

/// Coefficients of H_μ[X; t] (or H_μ[X; q, t]) on the level-k atoms.
pub fn k_kostka(mu: &Partition, k: usize, with_q: bool) -> Result<SchurExpansion> {
    if !mu.is_bounded(k) {
        return Err(Error::NotBounded(mu.to_string(), k));
    }
    let h = if with_q { macdonald_h(mu)? } else { hall_littlewood(mu)? };
    expand_in_atoms(&h, k)
}

/// K_{λμ}(q, t) as read from the Macdonald expansion.
pub fn qt_kostka(lambda: &Partition, mu: &Partition) -> Result<BivariatePoly> {
    Ok(macdonald_h(mu)?.get(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::from(v)
    }

    fn poly(terms: &[(usize, usize, i64)]) -> BivariatePoly {
        BivariatePoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn hook_atom_function() {
        let a = atom_function(&p(&[2, 1, 1]), 3).unwrap();
        assert_eq!(a.to_latex("S"), "S_{2,1,1}+t\\,S_{3,1}");
    }

    #[test]
    fn macdonald_in_atoms() {
        let mu = p(&[2, 1, 1]);
        let e2 = k_kostka(&mu, 2, true).unwrap();
        assert_eq!(e2.get(&p(&[2, 2])), poly(&[(0, 1, 1)]));
        assert_eq!(e2.get(&p(&[2, 1, 1])), poly(&[(0, 0, 1), (1, 2, 1)]));
        assert_eq!(e2.get(&p(&[1, 1, 1, 1])), poly(&[(1, 0, 1)]));
        assert_eq!(e2.len(), 3);
        let e3 = k_kostka(&mu, 3, true).unwrap();
        assert_eq!(e3.get(&p(&[3, 1])), poly(&[(0, 2, 1)]));
        assert_eq!(e3.get(&p(&[2, 2])), poly(&[(0, 1, 1), (1, 2, 1)]));
        assert_eq!(e3.get(&p(&[2, 1, 1])), poly(&[(0, 0, 1), (1, 2, 1)]));
        assert_eq!(e3.get(&p(&[1, 1, 1, 1])), poly(&[(1, 0, 1)]));
        assert_eq!(e3.len(), 4);
        let e4 = k_kostka(&mu, 4, true).unwrap();
        assert_eq!(e4.get(&p(&[4])), poly(&[(0, 3, 1)]));
        assert_eq!(e4.get(&p(&[3, 1])), poly(&[(0, 1, 1), (0, 2, 1), (1, 3, 1)]));
        assert_eq!(e4.get(&p(&[2, 2])), poly(&[(0, 1, 1), (1, 2, 1)]));
        assert_eq!(e4.get(&p(&[2, 1, 1])), poly(&[(0, 0, 1), (1, 1, 1), (1, 2, 1)]));
        assert_eq!(e4.get(&p(&[1, 1, 1, 1])), poly(&[(1, 0, 1)]));
    }

    #[test]
    fn non_bounded_leftover_is_an_error() {
        let f = SchurExpansion::schur(p(&[3]));
        assert!(expand_in_atoms(&f, 2).is_err());
    }
}
