use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::tableau::{Tableau, TableauSet};
use crate::word::{self, Letter};

fn fill_strip(t: &Tableau, shape: &Partition, letter: Letter) -> Tableau {
    let mut rows: Vec<Vec<Letter>> = t.rows().to_vec();
    for (r, &p) in shape.parts().iter().enumerate() {
        if rows.len() <= r {
            rows.push(vec![]);
        }
        while rows[r].len() < p {
            rows[r].push(letter);
        }
    }
    Tableau::new(rows).expect("strip filling")
}

/// 𝕽_r: every way of adding a horizontal r-strip of the letter m+1.
pub fn add_row_strip(t: &Tableau, r: usize) -> Vec<Tableau> {
    let letter = t.max_letter() + 1;
    t.shape().add_horizontal_strips(r).iter().map(|s| fill_strip(t, s, letter)).collect()
}

/// 𝔹_r = σ_1 ⋯ σ_m 𝕽_r, with σ_m applied first.
pub fn promote(t: &Tableau, r: usize) -> Vec<Tableau> {
    let m = t.max_letter();
    add_row_strip(t, r)
        .into_iter()
        .map(|u| {
            let mut w = u.reading_word();
            for i in (1..=m).rev() {
                w = word::sigma(i, &w);
            }
            Tableau::from_word(&w)
        })
        .collect()
}

/// 𝕽_{(ℓ^h)}: h horizontal ℓ-strips of letters m+1..m+h whose reading
/// word is Yamanouchi in the added letters.
pub fn add_rectangle_strips(t: &Tableau, ell: usize, h: usize) -> Vec<Tableau> {
    let m = t.max_letter();
    let mut current = vec![t.clone()];
    for j in 1..=h {
        let letters: Vec<Letter> = (1..=j).map(|i| m + i as Letter).collect();
        let mut next = vec![];
        for u in &current {
            for s in u.shape().add_horizontal_strips(ell) {
                let v = fill_strip(u, &s, m + j as Letter);
                if word::is_yamanouchi(&v.reading_word(), &letters) {
                    next.push(v);
                }
            }
        }
        current = next;
    }
    current
}

/// 𝔹_{(ℓ^h)} = σ_1^{(h)} ⋯ σ_m^{(h)} 𝕽_{(ℓ^h)}.
pub fn promote_rect(t: &Tableau, ell: usize, h: usize) -> Result<Vec<Tableau>> {
    if ell == 0 || h == 0 {
        return Err(Error::invalid("rectangle must be non-empty"));
    }
    let m = t.max_letter();
    add_rectangle_strips(t, ell, h)
        .into_iter()
        .map(|u| {
            let mut w = u.reading_word();
            for i in (1..=m).rev() {
                w = word::sigma_h(i, h as Letter, &w)?;
            }
            Ok(Tableau::from_word(&w))
        })
        .collect()
}

pub fn promote_set(set: &TableauSet, r: usize) -> Result<TableauSet> {
    set.flat_map(|t| Ok(promote(t, r)))
}

pub fn promote_rect_set(set: &TableauSet, ell: usize, h: usize) -> Result<TableauSet> {
    set.flat_map(|t| promote_rect(t, ell, h))
}

/// 𝕂_λ: drop the λ-subtableau, read the rest of the first ℓ(λ) rows above
/// the remaining rows, and insert.
pub fn katabolism(t: &Tableau, lambda: &Partition) -> Option<Tableau> {
    if !t.shape().contains(lambda) {
        return None;
    }
    let l = lambda.len();
    let rows = t.rows();
    let mut w: Vec<Letter> = vec![];
    for r in (0..l.min(rows.len())).rev() {
        w.extend_from_slice(&rows[r][lambda.part(r)..]);
    }
    for r in (l..rows.len()).rev() {
        w.extend_from_slice(&rows[r]);
    }
    Some(Tableau::from_word(&w))
}

/// The λ-subtableau has row i made of one repeated letter c+i.
pub fn in_s_lambda(sub: &Tableau, lambda: &Partition) -> bool {
    if sub.shape() != *lambda {
        return false;
    }
    let Some(c) = sub.min_letter() else {
        return true;
    };
    sub.rows().iter().enumerate().all(|(i, row)| row.iter().all(|&x| x == c + i as Letter))
}

pub fn restricted_katabolism(t: &Tableau, lambda: &Partition) -> Option<Tableau> {
    let sub = t.restrict(lambda)?;
    if !in_s_lambda(&sub, lambda) {
        return None;
    }
    katabolism(t, lambda)
}

/// ℙ_S: keeps `t` when the chain of restricted katabolisms empties it.
pub fn filter(t: &Tableau, seq: &[Partition]) -> Option<Tableau> {
    let mut u = t.clone();
    for lambda in seq {
        u = restricted_katabolism(&u, lambda)?;
    }
    if u.is_empty() {
        Some(t.clone())
    } else {
        None
    }
}

pub fn filter_set(set: &TableauSet, seq: &[Partition]) -> Result<TableauSet> {
    set.filter_map(|t| filter(t, seq))
}

/// ℍ_μ = 𝔹_{μ1} ⋯ 𝔹_{μn} ℍ_0.
pub fn generate_h(mu: &Partition) -> Result<TableauSet> {
    let mut set = TableauSet::singleton(Tableau::empty());
    for &p in mu.parts().iter().rev() {
        set = promote_set(&set, p)?;
    }
    Ok(set)
}

type AtomKey = (usize, Partition);

static ATOMS: Lazy<Mutex<HashMap<AtomKey, Arc<TableauSet>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// 𝔸_λ^{(k)} = ℙ_{λ→k} 𝔹_{λ1} 𝔸_{(λ2,...)}^{(k)}, memoised.
pub fn generate_atom(lambda: &Partition, k: usize) -> Result<Arc<TableauSet>> {
    if !lambda.is_bounded(k) {
        return Err(Error::NotBounded(lambda.to_string(), k));
    }
    let key = (k, lambda.clone());
    if let Some(a) = ATOMS.lock().unwrap().get(&key) {
        return Ok(a.clone());
    }
    let set = if lambda.is_empty() {
        TableauSet::singleton(Tableau::empty())
    } else {
        let rest = Partition::new(lambda.parts()[1..].to_vec())?;
        let inner = generate_atom(&rest, k)?;
        let promoted = promote_set(&inner, lambda.first())?;
        filter_set(&promoted, &lambda.k_split(k)?)?
    };
    let set = Arc::new(set);
    ATOMS.lock().unwrap().insert(key, set.clone());
    Ok(set)
}

/// Seeds the memo with an atom computed elsewhere (for example read from disk).
pub fn insert_atom(lambda: &Partition, k: usize, set: Arc<TableauSet>) {
    ATOMS.lock().unwrap().insert((k, lambda.clone()), set);
}

/// Whether the atom is already memoised.
pub fn atom_is_memoised(lambda: &Partition, k: usize) -> bool {
    ATOMS.lock().unwrap().contains_key(&(k, lambda.clone()))
}

/// 𝔸^{(k)} of the hook (m, 1^r) in closed form.
pub fn hook_atom(m: usize, r: usize, k: usize) -> Result<TableauSet> {
    let hook = Partition::new(std::iter::once(m).chain(std::iter::repeat_n(1, r)).collect())?;
    if m == 0 || !hook.is_k_irreducible(k) {
        return Err(Error::invalid(format!("{} is not a {}-irreducible hook", hook, k)));
    }
    let top: Vec<Letter> = (2..=r as Letter + 1).rev().collect();
    let mut w = top.clone();
    w.extend(std::iter::repeat_n(1, m));
    let mut out = vec![Tableau::from_word(&w)];
    if r + m > k {
        let mut w: Vec<Letter> = (2..=r as Letter).rev().collect();
        w.extend(std::iter::repeat_n(1, m));
        w.push(r as Letter + 1);
        out.push(Tableau::from_word(&w));
    }
    TableauSet::new(out)
}

/// Standard-filling version of 𝔹 indexed by a tableau of rectangular
/// shape: relabel the rectangle by `index` and send the other letters
/// onto the complement of its letters.
pub fn promote_indexed(t: &Tableau, index: &Tableau) -> Result<Vec<Tableau>> {
    let shape = index.shape();
    let (ell, h) = (shape.first(), shape.len());
    let n = t.size() + index.size();
    let used: Vec<Letter> = index.rows().iter().flatten().copied().collect();
    let complement: Vec<Letter> = (1..=n as Letter).filter(|x| !used.contains(x)).collect();
    let mut out = vec![];
    for u in promote_rect(t, ell, h)? {
        let mut rest: Vec<Letter> = vec![];
        for (r, row) in u.rows().iter().enumerate() {
            for &x in &row[shape.part(r).min(row.len())..] {
                rest.push(x);
            }
        }
        rest.sort_unstable();
        rest.dedup();
        if rest.len() != complement.len() {
            return Err(Error::invalid(format!("{} is not standard after promotion", u)));
        }
        let mut rows = u.rows().to_vec();
        let sub = u.restrict(&shape).ok_or_else(|| Error::invalid("rectangle missing"))?;
        if sub != Tableau::superstandard(&shape, 0) {
            return Err(Error::invalid(format!("{} does not start with the rectangle", u)));
        }
        for (r, row) in rows.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x = if c < shape.part(r) {
                    index.rows()[r][c]
                } else {
                    complement[rest.binary_search(x).unwrap()]
                };
            }
        }
        out.push(Tableau::new(rows)?);
    }
    Ok(out)
}
