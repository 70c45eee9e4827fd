use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Rows are numbered from the bottom (French convention), so `parts()[0]`
/// is the length of the bottom row.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!("{:?} is not weakly decreasing", parts)));
        }
        if parts.contains(&0) {
            return Err(Error::invalid(format!("{:?} has an interior zero", parts)));
        }
        Ok(Partition { parts })
    }

    /// Sorts the given parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    pub fn rectangle(width: usize, height: usize) -> Self {
        if width == 0 {
            return Self::empty();
        }
        Partition { parts: vec![width; height] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn first(&self) -> usize {
        self.part(0)
    }

    pub fn conjugate(&self) -> Partition {
        let mut conj = Vec::with_capacity(self.first());
        for j in 0..self.first() {
            conj.push(self.parts.iter().take_while(|&&p| p > j).count());
        }
        Partition { parts: conj }
    }

    /// n(λ) = Σ (i-1) λ_i.
    pub fn n(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    pub fn multiplicity(&self, part: usize) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    /// z_λ = Π i^{m_i} m_i!.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::from(1);
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let mut m = 0;
            while i < self.parts.len() && self.parts[i] == p {
                m += 1;
                i += 1;
                z *= p * m;
            }
        }
        z
    }

    /// `self` dominates `other` (sizes must agree).
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0, 0);
        for i in 0..self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(o, s)| o <= s)
    }

    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::from_unsorted(parts)
    }

    pub fn arm(&self, row: usize, col: usize) -> usize {
        self.part(row) - col - 1
    }

    pub fn leg(&self, row: usize, col: usize) -> usize {
        self.parts.iter().filter(|&&p| p > col).count() - row - 1
    }

    pub fn hook(&self, row: usize, col: usize) -> usize {
        self.arm(row, col) + self.leg(row, col) + 1
    }

    /// Hook length of the bottom-left cell, zero for the empty partition.
    pub fn main_hook(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.first() + self.len() - 1
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts.iter().enumerate().flat_map(|(r, &p)| (0..p).map(move |c| (r, c)))
    }

    pub fn is_bounded(&self, k: usize) -> bool {
        self.first() <= k
    }

    /// Partitions of `n` in reverse-lexicographic order, `(n)` first.
    pub fn all(n: usize) -> Vec<Partition> {
        Self::bounded(n, n)
    }

    /// Partitions of `n` with parts at most `k`, reverse-lexicographic.
    pub fn bounded(n: usize, k: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=max.min(n)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = vec![];
        rec(n, k, &mut vec![], &mut out);
        out
    }

    /// Greedy decomposition into blocks of main hook `k`, the last block
    /// possibly smaller.
    pub fn k_split(&self, k: usize) -> Result<Vec<Partition>> {
        if !self.is_bounded(k) {
            return Err(Error::NotBounded(self.to_string(), k));
        }
        let mut blocks = vec![];
        let mut i = 0;
        while i < self.parts.len() {
            let len = k + 1 - self.parts[i];
            let end = (i + len).min(self.parts.len());
            blocks.push(Partition { parts: self.parts[i..end].to_vec() });
            i = end;
        }
        Ok(blocks)
    }

    pub fn is_k_rectangle(&self, k: usize) -> bool {
        match self.parts.first() {
            Some(&l) => l <= k && self.parts.iter().all(|&p| p == l) && self.len() == k + 1 - l,
            None => false,
        }
    }

    /// At most i parts equal to k-i for 1 <= i < k, and no part >= k.
    pub fn is_k_irreducible(&self, k: usize) -> bool {
        if k == 0 {
            return self.is_empty();
        }
        if self.first() >= k {
            return false;
        }
        (1..k).all(|i| self.multiplicity(k - i) <= i)
    }

    /// The `k!` irreducible partitions, by size then reverse-lexicographic.
    pub fn k_irreducibles(k: usize) -> Vec<Partition> {
        if k == 0 {
            return vec![Partition::empty()];
        }
        let max = (1..k).map(|i| i * (k - i)).sum::<usize>();
        let mut out = vec![];
        for n in 0..=max {
            for p in Self::bounded(n, k.saturating_sub(1)) {
                if p.is_k_irreducible(k) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// λ_M = ((k-1)^1, (k-2)^2, ..., 1^{k-1}).
    pub fn max_irreducible(k: usize) -> Partition {
        let mut parts = vec![];
        for i in 1..k {
            parts.extend(std::iter::repeat_n(k - i, i));
        }
        Partition { parts }
    }

    /// The k-rectangles (ℓ^{k+1-ℓ}) for ℓ = 1..k.
    pub fn k_rectangles(k: usize) -> Vec<Partition> {
        (1..=k).map(|l| Self::rectangle(l, k + 1 - l)).collect()
    }

    /// Splits into the multiset of k-rectangles it contains and the
    /// irreducible core.
    pub fn k_rectangle_decompose(&self, k: usize) -> Result<(Vec<Partition>, Partition)> {
        if !self.is_bounded(k) {
            return Err(Error::NotBounded(self.to_string(), k));
        }
        let mut rects = vec![];
        let mut core = vec![];
        for l in (1..=k).rev() {
            let h = k + 1 - l;
            let m = self.multiplicity(l);
            for _ in 0..m / h {
                rects.push(Self::rectangle(l, h));
            }
            core.extend(std::iter::repeat_n(l, m % h));
        }
        Ok((rects, Partition { parts: core }))
    }

    /// ((k-1)^{n_1},...,1^{n_{k-1}}) -> ((k-1)^{1-n_1},...,1^{k-1-n_{k-1}}).
    pub fn flip(&self, k: usize) -> Result<Partition> {
        if !self.is_k_irreducible(k) {
            return Err(Error::invalid(format!("{} is not {}-irreducible", self, k)));
        }
        let mut parts = vec![];
        for i in 1..k {
            parts.extend(std::iter::repeat_n(k - i, i - self.multiplicity(k - i)));
        }
        Ok(Partition { parts })
    }

    /// ω_k: k-multiply the parts from the last one to the first and read
    /// off the row lengths of the resulting skew diagram.
    pub fn k_conjugate(&self, k: usize) -> Result<Partition> {
        if !self.is_bounded(k) {
            return Err(Error::NotBounded(self.to_string(), k));
        }
        let mut d = SkewDiagram::empty();
        for &p in self.parts.iter().rev() {
            d = d.k_multiply(p, k)?;
        }
        Partition::new(d.row_lengths())
            .map_err(|_| Error::arith(format!("k-conjugate of {} is not a partition", self)))
    }

    /// Shapes obtained by adding a horizontal strip of `r` cells.
    pub fn add_horizontal_strips(&self, r: usize) -> Vec<Partition> {
        let l = self.len();
        let mut out = vec![];
        let mut add = vec![0usize; l + 1];
        fn rec(p: &Partition, i: usize, left: usize, add: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if i == add.len() {
                if left == 0 {
                    let parts = (0..add.len()).map(|j| p.part(j) + add[j]).collect();
                    out.push(Partition::new(parts).unwrap());
                }
                return;
            }
            let cap = if i == 0 { left } else { (p.part(i - 1) - p.part(i)).min(left) };
            for a in (0..=cap).rev() {
                add[i] = a;
                rec(p, i + 1, left - a, add, out);
            }
            add[i] = 0;
        }
        rec(self, 0, r, &mut add, &mut out);
        out
    }

    /// Shapes obtained by adding a vertical strip of `r` cells.
    pub fn add_vertical_strips(&self, r: usize) -> Vec<Partition> {
        self.conjugate()
            .add_horizontal_strips(r)
            .into_iter()
            .map(|p| p.conjugate())
            .collect()
    }

    /// `self / inner` is a horizontal strip.
    pub fn is_horizontal_strip_over(&self, inner: &Partition) -> bool {
        self.contains(inner) && (0..self.len()).all(|i| i == 0 || self.part(i) <= inner.part(i - 1))
    }

    pub fn is_vertical_strip_over(&self, inner: &Partition) -> bool {
        self.contains(inner) && (0..self.len()).all(|i| self.part(i) <= inner.part(i) + 1)
    }

    /// Comma separated parts, as accepted by `FromStr`.
    pub fn to_csv(&self) -> String {
        self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Lexicographic comparison, which refines dominance.
pub fn dominance_total_cmp(a: &Partition, b: &Partition) -> Ordering {
    a.parts.cmp(&b.parts)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "({})", self.to_csv())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::invalid(format!("bad part {:?}", x))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl From<&[usize]> for Partition {
    fn from(parts: &[usize]) -> Self {
        Partition::new(parts.to_vec()).expect("not a partition")
    }
}

/// A skew shape `outer / inner`, rows numbered from the bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewDiagram {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewDiagram {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::invalid(format!("{} does not contain {}", outer, inner)));
        }
        Ok(SkewDiagram { outer, inner })
    }

    pub fn empty() -> Self {
        SkewDiagram { outer: Partition::empty(), inner: Partition::empty() }
    }

    pub fn rows(&self) -> usize {
        self.outer.len()
    }

    pub fn row_lengths(&self) -> Vec<usize> {
        (0..self.rows()).map(|r| self.outer.part(r) - self.inner.part(r)).collect()
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        col >= self.inner.part(row) && col < self.outer.part(row)
    }

    pub fn hook(&self, row: usize, col: usize) -> usize {
        let arm = self.outer.part(row) - col - 1;
        let mut leg = 0;
        while self.contains_cell(row + leg + 1, col) {
            leg += 1;
        }
        arm + leg + 1
    }

    pub fn max_hook(&self) -> usize {
        let mut best = 0;
        for r in 0..self.rows() {
            for c in self.inner.part(r)..self.outer.part(r) {
                best = best.max(self.hook(r, c));
            }
        }
        best
    }

    /// Adds a first column of length `m` at the lowest row keeping every
    /// hook length at most `k`.
    pub fn k_multiply(&self, m: usize, k: usize) -> Result<SkewDiagram> {
        if m == 0 {
            return Ok(self.clone());
        }
        if m > k {
            return Err(Error::NotBounded(format!("({})", m), k));
        }
        let rows = self.rows();
        for h in 0..=rows {
            let top = h + m;
            let n = rows.max(top);
            let mut outer = Vec::with_capacity(n);
            let mut inner = Vec::with_capacity(n);
            let mut ok = true;
            for r in 0..n {
                let (o, i) = (self.outer.part(r), self.inner.part(r));
                let empty = o == i;
                if r >= h && r < top {
                    if !empty && i != 0 {
                        ok = false;
                        break;
                    }
                    outer.push(if empty { 1 } else { o + 1 });
                    inner.push(0);
                } else if empty {
                    outer.push(0);
                    inner.push(0);
                } else {
                    outer.push(o + 1);
                    inner.push(i + 1);
                }
            }
            if !ok {
                continue;
            }
            let (Ok(outer), Ok(inner)) = (Partition::new(outer), Partition::new(inner)) else {
                continue;
            };
            if !outer.contains(&inner) {
                continue;
            }
            let d = SkewDiagram { outer, inner };
            if (h..top).all(|r| d.hook(r, 0) <= k) {
                return Ok(d);
            }
        }
        Err(Error::arith(format!("no placement for a column of {} at level {}", m, k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::from(v)
    }

    #[test]
    fn k_split_examples() {
        let l = p(&[3, 2, 2, 2, 1, 1]);
        assert_eq!(l.k_split(3).unwrap(), vec![p(&[3]), p(&[2, 2]), p(&[2, 1]), p(&[1])]);
        assert_eq!(l.k_split(4).unwrap(), vec![p(&[3, 2]), p(&[2, 2, 1]), p(&[1])]);
        assert_eq!(l.k_split(8).unwrap(), vec![l.clone()]);
        assert!(p(&[4]).k_split(3).is_err());
        assert!(Partition::empty().k_split(2).unwrap().is_empty());
    }

    #[test]
    fn irreducibles_small() {
        let got = Partition::k_irreducibles(3);
        let want = vec![Partition::empty(), p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1]), p(&[2, 1, 1])];
        assert_eq!(got, want);
        assert_eq!(Partition::k_irreducibles(2), vec![Partition::empty(), p(&[1])]);
        assert_eq!(Partition::k_irreducibles(5).len(), 120);
    }

    #[test]
    fn rectangles_and_core() {
        let (rects, core) = p(&[2, 2, 2, 1]).k_rectangle_decompose(2).unwrap();
        assert_eq!(rects, vec![p(&[2]), p(&[2]), p(&[2])]);
        assert_eq!(core, p(&[1]));
        assert_eq!(Partition::k_rectangles(3), vec![p(&[1, 1, 1]), p(&[2, 2]), p(&[3])]);
    }

    #[test]
    fn flip_example() {
        assert_eq!(p(&[4, 3, 2]).flip(5).unwrap(), p(&[3, 2, 2, 1, 1, 1, 1]));
        assert_eq!(Partition::empty().flip(4).unwrap(), Partition::max_irreducible(4));
    }

    #[test]
    fn k_multiply_column_placement() {
        // outer (5,4,2,2,1,1) / inner (3,1,1), with a column of 4 at level 5
        let d = SkewDiagram::new(p(&[5, 4, 2, 2, 1, 1]), p(&[3, 1, 1])).unwrap();
        let e = d.k_multiply(4, 5).unwrap();
        assert_eq!(e.outer, p(&[6, 5, 3, 3, 2, 2, 1, 1]));
        assert_eq!(e.inner, p(&[4, 2, 2, 1]));
    }

    #[test]
    fn k_conjugate_examples() {
        assert_eq!(p(&[2, 2, 1, 1]).k_conjugate(4).unwrap(), p(&[3, 2, 1]));
        assert_eq!(p(&[3, 2, 1]).k_conjugate(4).unwrap(), p(&[2, 2, 1, 1]));
        assert_eq!(p(&[3, 2, 1]).k_conjugate(10).unwrap(), p(&[3, 2, 1]));
        assert_eq!(p(&[4, 1]).k_conjugate(9).unwrap(), p(&[2, 1, 1, 1]));
    }

    #[test]
    fn strips() {
        let hs = p(&[2, 1]).add_horizontal_strips(2);
        assert_eq!(hs, vec![p(&[4, 1]), p(&[3, 2]), p(&[3, 1, 1]), p(&[2, 2, 1])]);
        for s in &hs {
            assert!(s.is_horizontal_strip_over(&p(&[2, 1])));
        }
        let vs = p(&[2, 1]).add_vertical_strips(2);
        assert!(vs.iter().all(|s| s.is_vertical_strip_over(&p(&[2, 1]))));
        assert_eq!(vs.len(), 4);
    }

    #[test]
    fn basics() {
        let l = p(&[3, 1, 1]);
        assert_eq!(l.conjugate(), p(&[3, 1, 1]));
        assert_eq!(l.n(), 3);
        assert_eq!(l.z(), BigInt::from(6));
        assert_eq!(l.main_hook(), 5);
        assert_eq!(Partition::empty().main_hook(), 0);
        assert!(p(&[3, 1]).dominates(&p(&[2, 2])));
        assert!(!p(&[2, 2]).dominates(&p(&[3, 1])));
        assert_eq!("3,2,1".parse::<Partition>().unwrap(), p(&[3, 2, 1]));
        assert!("1,2".parse::<Partition>().is_err());
        assert_eq!(Partition::all(4).len(), 5);
        assert_eq!(Partition::all(4)[0], p(&[4]));
    }
}
