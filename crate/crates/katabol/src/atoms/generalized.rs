use crate::error::{Error, Result};
use crate::operators::{filter_set, generate_h};
use crate::partition::Partition;
use crate::symfunc::{digamma, SchurExpansion};

/// ϝ({T ∈ ℍ_μ : ℙ_S(T) = T}) for a dominant sequence S of k-rectangles,
/// μ being the concatenation of S.
pub fn generalized_kostka(seq: &[Partition], k: usize) -> Result<SchurExpansion> {
    for r in seq {
        if !r.is_k_rectangle(k) {
            return Err(Error::invalid(format!("{} is not a {}-rectangle", r, k)));
        }
    }
    let parts: Vec<usize> = seq.iter().flat_map(|r| r.parts().iter().copied()).collect();
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::invalid("rectangle sequence is not dominant"));
    }
    let mu = Partition::new(parts)?;
    Ok(digamma(&filter_set(&generate_h(&mu)?, seq)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::atom_function;

    fn p(v: &[usize]) -> Partition {
        Partition::from(v)
    }

    #[test]
    fn single_rectangle() {
        let r = p(&[2, 2]);
        assert_eq!(generalized_kostka(std::slice::from_ref(&r), 3).unwrap(), SchurExpansion::schur(r));
    }

    #[test]
    fn two_rectangles() {
        let got = generalized_kostka(&[p(&[2]), p(&[1, 1])], 2).unwrap();
        assert_eq!(got, atom_function(&p(&[2, 1, 1]), 2).unwrap());
        assert!(generalized_kostka(&[p(&[1, 1]), p(&[2])], 2).is_err());
    }
}
