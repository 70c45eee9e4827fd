use crate::error::{Error, Result};
use crate::tableau::{inverse_rsk, rsk, Tableau};

pub type Letter = u8;

/// Number of occurrences of each letter `1..=max`.
pub fn evaluation(w: &[Letter]) -> Vec<usize> {
    let max = w.iter().copied().max().unwrap_or(0) as usize;
    let mut ev = vec![0; max];
    for &x in w {
        ev[x as usize - 1] += 1;
    }
    ev
}

pub fn is_partition_evaluation(ev: &[usize]) -> bool {
    ev.windows(2).all(|p| p[0] >= p[1])
}

/// Every suffix holds at least as many `letters[j]` as `letters[j+1]`.
pub fn is_yamanouchi(w: &[Letter], letters: &[Letter]) -> bool {
    let mut counts = vec![0usize; letters.len()];
    for &x in w.iter().rev() {
        if let Some(j) = letters.iter().position(|&l| l == x) {
            counts[j] += 1;
            if j > 0 && counts[j] > counts[j - 1] {
                return false;
            }
        }
    }
    true
}

/// The Lascoux–Schützenberger involution on the letters i, i+1.
pub fn sigma(i: Letter, w: &[Letter]) -> Vec<Letter> {
    let (a, b) = (i, i + 1);
    let mut out = w.to_vec();
    let mut open: Vec<usize> = vec![];
    let mut free_a: Vec<usize> = vec![];
    for (pos, &x) in w.iter().enumerate() {
        if x == b {
            open.push(pos);
        } else if x == a && open.pop().is_none() {
            free_a.push(pos);
        }
    }
    let free: Vec<usize> = {
        let mut v = free_a.clone();
        v.extend(open.iter().copied());
        v.sort_unstable();
        v
    };
    let s = open.len();
    for (j, &pos) in free.iter().enumerate() {
        out[pos] = if j < s { a } else { b };
    }
    out
}

/// σ_1^{(h)} on a word over 1..=h+1.
fn sigma_one_block(h: Letter, w: &[Letter]) -> Result<Vec<Letter>> {
    let (p, q) = rsk(w);
    let reduced: Vec<Letter> = w.iter().filter(|&&x| x != 1).map(|&x| x - 1).collect();
    let p2 = Tableau::from_word(&reduced);
    let mut rows: Vec<Vec<Letter>> = p2.rows().to_vec();
    for (r, row) in p.rows().iter().enumerate() {
        if rows.len() <= r {
            rows.push(vec![]);
        }
        while rows[r].len() < row.len() {
            rows[r].push(h + 1);
        }
    }
    let filled = Tableau::new(rows)
        .map_err(|e| Error::arith(format!("block move produced a non-tableau: {}", e)))?;
    inverse_rsk(&filled, &q)
}

/// σ_i^{(h)}: moves the multiplicity of `i` past those of `i+1..=i+h`,
/// acting only on the subword over those letters.
pub fn sigma_h(i: Letter, h: Letter, w: &[Letter]) -> Result<Vec<Letter>> {
    if h == 0 {
        return Ok(w.to_vec());
    }
    let hi = i + h;
    let positions: Vec<usize> = (0..w.len()).filter(|&p| w[p] >= i && w[p] <= hi).collect();
    let sub: Vec<Letter> = positions.iter().map(|&p| w[p] - i + 1).collect();
    let moved = sigma_one_block(h, &sub)?;
    let mut out = w.to_vec();
    for (j, &p) in positions.iter().enumerate() {
        out[p] = moved[j] + i - 1;
    }
    Ok(out)
}

fn charge_partition(w: &[Letter]) -> usize {
    let n = w.len();
    let mut used = vec![false; n];
    let mut left = n;
    let mut total = 0;
    while left > 0 {
        let top = (0..n).filter(|&p| !used[p]).map(|p| w[p]).max().unwrap();
        let mut pos = n;
        let mut index = 0;
        for letter in 1..=top {
            let found = (0..pos).rev().find(|&p| !used[p] && w[p] == letter);
            let j = match found {
                Some(j) => j,
                None => {
                    index += 1;
                    (pos..n).rev().find(|&p| !used[p] && w[p] == letter).expect("evaluation is not a partition")
                }
            };
            total += index;
            used[j] = true;
            left -= 1;
            pos = j;
        }
    }
    total
}

/// The σ_i's (applied left to right) that sort an evaluation into a partition.
pub fn sorting_sigmas(ev: &[usize]) -> Vec<Letter> {
    let mut ev = ev.to_vec();
    let mut seq = vec![];
    while let Some(i) = (0..ev.len().saturating_sub(1)).find(|&i| ev[i] < ev[i + 1]) {
        seq.push(i as Letter + 1);
        ev.swap(i, i + 1);
    }
    seq
}

pub fn apply_sigmas(seq: &[Letter], w: &[Letter]) -> Vec<Letter> {
    seq.iter().fold(w.to_vec(), |w, &i| sigma(i, &w))
}

/// Sorts the evaluation into a partition using σ's, then applies the
/// circular charge reading.
pub fn charge(w: &[Letter]) -> usize {
    let seq = sorting_sigmas(&evaluation(w));
    charge_partition(&apply_sigmas(&seq, w))
}

pub fn format_word(w: &[Letter]) -> String {
    if w.iter().all(|&x| x < 10) {
        w.iter().map(|x| x.to_string()).collect()
    } else {
        w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

pub fn parse_word(s: &str) -> Result<Vec<Letter>> {
    let s = s.trim();
    let bad = || Error::invalid(format!("bad word {:?}", s));
    if s.contains(',') {
        s.split(',').map(|x| x.trim().parse::<Letter>().map_err(|_| bad())).collect()
    } else {
        s.chars()
            .map(|c| c.to_digit(10).filter(|&d| d > 0).map(|d| d as Letter).ok_or_else(bad))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<Letter> {
        parse_word(s).unwrap()
    }

    #[test]
    fn charge_examples() {
        assert_eq!(charge(&w("12114123234")), 7);
        assert_eq!(charge(&w("12")), 1);
        assert_eq!(charge(&w("21")), 0);
        assert_eq!(charge(&w("123")), 3);
        assert_eq!(charge(&[]), 0);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(2, &w("123343222423")), w("123343222433"));
        assert_eq!(sigma(2, &w("233322223")), w("233322233"));
    }

    #[test]
    fn sigma_block_of_one_is_sigma() {
        for s in ["2211333", "3213", "121212", "3321", "13"] {
            let u = w(s);
            assert_eq!(sigma_h(1, 1, &u).unwrap(), sigma(1, &u), "{}", s);
            assert_eq!(sigma_h(2, 1, &u).unwrap(), sigma(2, &u), "{}", s);
        }
    }

    #[test]
    fn yamanouchi() {
        assert!(is_yamanouchi(&w("4312"), &[3, 4]));
        assert!(!is_yamanouchi(&w("3421"), &[3, 4]));
        assert!(!is_yamanouchi(&w("3341"), &[3, 4]));
        assert!(is_yamanouchi(&w("2121"), &[1, 2]));
    }
}
