use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::word::{self, Letter};

/// A semistandard tableau in French notation: `rows()[0]` is the bottom row.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Tableau {
    rows: Vec<Vec<Letter>>,
}

impl Tableau {
    pub fn new(mut rows: Vec<Vec<Letter>>) -> Result<Self> {
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        let t = Tableau { rows };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::invalid(format!("{:?} {}", self.rows, why)));
        for (r, row) in self.rows.iter().enumerate() {
            if row.is_empty() || row.contains(&0) {
                return bad("has an empty row or a zero letter");
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return bad("has a decreasing row");
            }
            if r > 0 {
                let below = &self.rows[r - 1];
                if row.len() > below.len() {
                    return bad("is not a partition shape");
                }
                if row.iter().zip(below).any(|(a, b)| a <= b) {
                    return bad("has a non-increasing column");
                }
            }
        }
        Ok(())
    }

    pub fn empty() -> Self {
        Tableau { rows: vec![] }
    }

    /// The insertion tableau P(w).
    pub fn from_word(w: &[Letter]) -> Self {
        let mut t = Tableau::empty();
        for &x in w {
            t.insert(x);
        }
        t
    }

    /// The tableau of the given shape whose row i holds only the letter
    /// `offset + i + 1`.
    pub fn superstandard(shape: &Partition, offset: Letter) -> Self {
        Tableau {
            rows: shape.parts().iter().enumerate().map(|(i, &p)| vec![offset + i as Letter + 1; p]).collect(),
        }
    }

    /// Row insertion; returns the row index of the new cell.
    pub fn insert(&mut self, mut x: Letter) -> usize {
        let mut r = 0;
        loop {
            if r == self.rows.len() {
                self.rows.push(vec![x]);
                return r;
            }
            let row = &mut self.rows[r];
            match row.iter().position(|&y| y > x) {
                None => {
                    row.push(x);
                    return r;
                }
                Some(j) => {
                    std::mem::swap(&mut row[j], &mut x);
                    r += 1;
                }
            }
        }
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(|r| r.len()).collect()).unwrap()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<Letter> {
        self.rows.get(row).and_then(|r| r.get(col)).copied()
    }

    /// Rows read from top to bottom, each left to right.
    pub fn reading_word(&self) -> Vec<Letter> {
        self.rows.iter().rev().flatten().copied().collect()
    }

    pub fn evaluation(&self) -> Vec<usize> {
        word::evaluation(&self.reading_word())
    }

    pub fn max_letter(&self) -> Letter {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn min_letter(&self) -> Option<Letter> {
        self.rows.iter().flatten().copied().min()
    }

    pub fn charge(&self) -> usize {
        word::charge(&self.reading_word())
    }

    pub fn is_standard(&self) -> bool {
        self.evaluation().iter().all(|&c| c == 1)
    }

    /// `T = x w` with x not the smallest letter gives `P(w x)`.
    pub fn cyclage(&self) -> Option<Tableau> {
        let w = self.reading_word();
        let (&x, rest) = w.split_first()?;
        if Some(x) == self.min_letter() {
            return None;
        }
        let mut u = rest.to_vec();
        u.push(x);
        Some(Tableau::from_word(&u))
    }

    /// `T = w x` with x not the smallest letter gives `P(x w)`.
    pub fn cocyclage(&self) -> Option<Tableau> {
        let w = self.reading_word();
        let (&x, rest) = w.split_last()?;
        if Some(x) == self.min_letter() {
            return None;
        }
        let mut u = vec![x];
        u.extend_from_slice(rest);
        Some(Tableau::from_word(&u))
    }

    /// Image under the σ's that sort the evaluation into a partition.
    pub fn sort_evaluation(&self) -> Tableau {
        let seq = word::sorting_sigmas(&self.evaluation());
        if seq.is_empty() {
            return self.clone();
        }
        Tableau::from_word(&word::apply_sigmas(&seq, &self.reading_word()))
    }

    /// Diagram transpose; only defined for fillings with distinct letters.
    pub fn transpose(&self) -> Result<Tableau> {
        let shape = self.shape().conjugate();
        let rows = (0..shape.len())
            .map(|c| (0..shape.part(c)).map(|r| self.rows[r][c]).collect())
            .collect();
        Tableau::new(rows)
    }

    /// Relabels order-preservingly onto 1..=n; needs distinct letters.
    pub fn standardize(&self) -> Tableau {
        let mut letters: Vec<Letter> = self.rows.iter().flatten().copied().collect();
        letters.sort_unstable();
        letters.dedup();
        self.map_letters(|x| letters.binary_search(&x).unwrap() as Letter + 1)
    }

    pub fn map_letters(&self, mut f: impl FnMut(Letter) -> Letter) -> Tableau {
        Tableau { rows: self.rows.iter().map(|r| r.iter().map(|&x| f(x)).collect()).collect() }
    }

    pub fn shift(&self, delta: i32) -> Tableau {
        self.map_letters(|x| (x as i32 + delta) as Letter)
    }

    /// The cells lying inside `shape`, if `shape` fits.
    pub fn restrict(&self, shape: &Partition) -> Option<Tableau> {
        if !self.shape().contains(shape) {
            return None;
        }
        Some(Tableau {
            rows: shape.parts().iter().enumerate().map(|(r, &p)| self.rows[r][..p].to_vec()).collect(),
        })
    }

    /// Replaces the bottom-left `shape(target)` block, which must be the
    /// superstandard rectangle on letters 1..=h, by `target`, and shifts
    /// every other letter so the remaining ones start after the largest
    /// letter of `target`.
    pub fn relabel(&self, target: &Tableau) -> Option<Tableau> {
        let shape = target.shape();
        let h = shape.len() as Letter;
        let sub = self.restrict(&shape)?;
        if sub != Tableau::superstandard(&shape, 0) {
            return None;
        }
        let s = target.max_letter();
        let mut rows = self.rows.clone();
        for (r, row) in rows.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                if c < shape.part(r) {
                    *x = target.rows[r][c];
                } else if *x <= h {
                    return None;
                } else {
                    *x = *x - h + s;
                }
            }
        }
        Tableau::new(rows).ok()
    }
}

/// (P(w), Q(w)) by row insertion.
pub fn rsk(w: &[Letter]) -> (Tableau, Tableau) {
    let mut p = Tableau::empty();
    let mut q_rows: Vec<Vec<Letter>> = vec![];
    for (i, &x) in w.iter().enumerate() {
        let r = p.insert(x);
        if q_rows.len() == r {
            q_rows.push(vec![]);
        }
        q_rows[r].push(i as Letter + 1);
    }
    (p, Tableau { rows: q_rows })
}

/// Inverse of `rsk`; `q` must be standard of the same shape as `p`.
pub fn inverse_rsk(p: &Tableau, q: &Tableau) -> Result<Vec<Letter>> {
    if p.shape() != q.shape() || !q.is_standard() {
        return Err(Error::invalid("recording tableau mismatch"));
    }
    let n = p.size();
    let mut rows = p.rows.clone();
    let mut qrows = q.rows.clone();
    let mut out = vec![0; n];
    for step in (1..=n).rev() {
        let r = qrows.iter().position(|row| row.last() == Some(&(step as Letter))).ok_or_else(|| {
            Error::invalid("recording tableau is not a valid growth")
        })?;
        qrows[r].pop();
        let mut x = rows[r].pop().unwrap();
        for rr in (0..r).rev() {
            let row = &mut rows[rr];
            let j = row.iter().rposition(|&y| y < x).expect("reverse bump");
            std::mem::swap(&mut row[j], &mut x);
        }
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
            qrows.pop();
        }
        out[step - 1] = x;
    }
    Ok(out)
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "∅");
        }
        let rows: Vec<String> = self.rows.iter().rev().map(|r| word::format_word(r)).collect();
        write!(f, "{}", rows.join("/"))
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Tableau {
    type Err = Error;

    /// Rows from top to bottom separated by `/`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Tableau::empty());
        }
        let mut rows = s.split('/').map(word::parse_word).collect::<Result<Vec<_>>>()?;
        rows.reverse();
        Tableau::new(rows)
    }
}

/// Shape reverse-lexicographic, then reading word.
pub fn canonical_cmp(a: &Tableau, b: &Tableau) -> Ordering {
    let (sa, sb) = (a.shape(), b.shape());
    sb.cmp(&sa).then_with(|| a.reading_word().cmp(&b.reading_word()))
}

/// A duplicate-free set of tableaux sharing one evaluation.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableauSet {
    evaluation: Vec<usize>,
    tableaux: Vec<Tableau>,
}

impl TableauSet {
    pub fn new(mut tableaux: Vec<Tableau>) -> Result<Self> {
        let evaluation = tableaux.first().map(|t| t.evaluation()).unwrap_or_default();
        if let Some(t) = tableaux.iter().find(|t| t.evaluation() != evaluation) {
            return Err(Error::invalid(format!("{} does not have evaluation {:?}", t, evaluation)));
        }
        tableaux.sort_by(canonical_cmp);
        if let Some(w) = tableaux.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Duplicate(w[0].to_string()));
        }
        Ok(TableauSet { evaluation, tableaux })
    }

    pub fn singleton(t: Tableau) -> Self {
        TableauSet { evaluation: t.evaluation(), tableaux: vec![t] }
    }

    pub fn evaluation(&self) -> &[usize] {
        &self.evaluation
    }

    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    pub fn len(&self) -> usize {
        self.tableaux.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tableaux.is_empty()
    }

    pub fn contains(&self, t: &Tableau) -> bool {
        self.tableaux.binary_search_by(|u| canonical_cmp(u, t)).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Tableau> {
        self.tableaux.iter()
    }

    /// Applies `f` to each member and collects the union of the outputs.
    pub fn flat_map<F>(&self, f: F) -> Result<TableauSet>
    where
        F: Fn(&Tableau) -> Result<Vec<Tableau>>,
    {
        let mut out = vec![];
        for t in &self.tableaux {
            out.extend(f(t)?);
        }
        TableauSet::new(out)
    }

    pub fn filter_map<F>(&self, f: F) -> Result<TableauSet>
    where
        F: Fn(&Tableau) -> Option<Tableau>,
    {
        TableauSet::new(self.tableaux.iter().filter_map(f).collect())
    }
}

impl fmt::Display for TableauSet {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let items: Vec<String> = self.tableaux.iter().map(|t| t.to_string()).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

impl fmt::Debug for TableauSet {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl IntoIterator for TableauSet {
    type Item = Tableau;
    type IntoIter = std::vec::IntoIter<Tableau>;

    fn into_iter(self) -> Self::IntoIter {
        self.tableaux.into_iter()
    }
}

impl<'a> IntoIterator for &'a TableauSet {
    type Item = &'a Tableau;
    type IntoIter = std::slice::Iter<'a, Tableau>;

    fn into_iter(self) -> Self::IntoIter {
        self.tableaux.iter()
    }
}

/// Parses tableaux written top row first, e.g. `3/2/14`.
pub fn tabs(items: &[&str]) -> Vec<Tableau> {
    items.iter().map(|s| s.parse().unwrap()).collect()
}
