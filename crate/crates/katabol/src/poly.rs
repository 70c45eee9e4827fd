use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense univariate polynomial over Z, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub(crate) struct UPoly(Vec<BigInt>);

impl UPoly {
    fn trim(mut v: Vec<BigInt>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        UPoly(v)
    }

    pub(crate) fn constant(c: BigInt) -> Self {
        Self::trim(vec![c])
    }

    fn one() -> Self {
        UPoly(vec![BigInt::one()])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lc(&self) -> &BigInt {
        self.0.last().expect("zero polynomial")
    }

    fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let v = (0..n)
            .map(|i| match (self.0.get(i), o.0.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                _ => unreachable!(),
            })
            .collect();
        Self::trim(v)
    }

    fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::default();
        }
        if o.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return o.clone();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        Self::trim(v)
    }

    fn shift(&self, by: usize) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); by];
        v.extend(self.0.iter().cloned());
        UPoly(v)
    }

    fn scale(&self, c: &BigInt) -> UPoly {
        if c.is_zero() {
            return UPoly::default();
        }
        UPoly(self.0.iter().map(|x| x * c).collect())
    }

    fn div_scalar(&self, c: &BigInt) -> UPoly {
        UPoly(self.0.iter().map(|x| x / c).collect())
    }

    fn pow(&self, e: usize) -> UPoly {
        let mut r = UPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    fn div_exact(&self, o: &UPoly) -> Option<UPoly> {
        if o.is_zero() {
            return None;
        }
        if o.is_one() {
            return Some(self.clone());
        }
        if o.0.len() == 1 {
            let c = &o.0[0];
            if self.0.iter().any(|x| !(x % c).is_zero()) {
                return None;
            }
            return Some(self.div_scalar(c));
        }
        let mut r = self.0.clone();
        if r.len() < o.0.len() {
            return if self.is_zero() { Some(UPoly::default()) } else { None };
        }
        let lc = o.lc();
        let dq = r.len() - o.0.len();
        let mut q = vec![BigInt::zero(); dq + 1];
        for s in (0..=dq).rev() {
            let top = &r[s + o.0.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (c, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, b) in o.0.iter().enumerate() {
                r[s + j] -= &c * b;
            }
            q[s] = c;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(Self::trim(q))
    }

    fn prem(&self, o: &UPoly) -> UPoly {
        let mut r = self.clone();
        if r.0.len() < o.0.len() {
            return r;
        }
        let lc = o.lc().clone();
        let mut e = self.deg() - o.deg() + 1;
        while !r.is_zero() && r.deg() >= o.deg() {
            let s = r.deg() - o.deg();
            let c = r.lc().clone();
            r = r.scale(&lc).sub(&o.shift(s).scale(&c));
            e -= 1;
        }
        r.scale(&num_traits::pow(lc, e))
    }

    /// Gcd over Z[x], positive leading coefficient.
    fn gcd(&self, o: &UPoly) -> UPoly {
        if self.is_zero() {
            return o.primitive().scale(&o.content());
        }
        if o.is_zero() {
            return self.primitive().scale(&self.content());
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.deg() == 0 {
                return UPoly::constant(c);
            }
            let r = a.prem(&b).primitive();
            a = b;
            b = r;
        }
        a.scale(&c)
    }

    fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn max_norm(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Balanced base-ξ digits of an integer.
    fn from_digits(mut g: BigInt, xi: &BigInt) -> UPoly {
        let half = xi / 2;
        let mut v = vec![];
        while !g.is_zero() {
            let mut d = g.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            g = (&g - &d) / xi;
            v.push(d);
        }
        Self::trim(v)
    }

    /// Gcd by evaluation at a large integer, verified by trial division.
    fn heuristic_gcd(&self, o: &UPoly) -> Option<UPoly> {
        let c = self.content().gcd(&o.content());
        let (a, b) = (self.primitive(), o.primitive());
        if a.deg() == 0 || b.deg() == 0 {
            return Some(UPoly::constant(c));
        }
        let mut xi = BigInt::from(2) * a.max_norm().min(b.max_norm()) + 2;
        for _ in 0..6 {
            let (x, y) = (a.eval(&xi), b.eval(&xi));
            if !x.is_zero() && !y.is_zero() {
                let g = Self::from_digits(x.gcd(&y), &xi).primitive();
                if !g.is_zero() && a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                    return Some(g.scale(&c));
                }
            }
            xi = xi * 73794u32 / 27011u32 + 1;
        }
        None
    }

    fn fast_gcd(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return self.gcd(o);
        }
        self.heuristic_gcd(o).unwrap_or_else(|| self.gcd(o))
    }
}

/// Polynomial in q and t with integer coefficients.
///
/// Stored densely as coefficients of q^i, each a polynomial in t.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BivariatePoly {
    rows: Vec<UPoly>,
}

impl BivariatePoly {
    fn trim(mut rows: Vec<UPoly>) -> Self {
        while rows.last().is_some_and(|r| r.is_zero()) {
            rows.pop();
        }
        BivariatePoly { rows }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::trim(vec![UPoly::constant(c.into())])
    }

    pub fn monomial(c: impl Into<BigInt>, q: usize, t: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut row = vec![BigInt::zero(); t + 1];
        row[t] = c;
        let mut rows = vec![UPoly::default(); q + 1];
        rows[q] = UPoly(row);
        BivariatePoly { rows }
    }

    pub fn q() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// Σ c q^a t^b over `(a, b, c)`.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, C)>,
        C: Into<BigInt>,
    {
        let mut acc = Self::zero();
        for (a, b, c) in terms {
            acc += &Self::monomial(c, a, b);
        }
        acc
    }

    fn from_upoly_t(p: UPoly) -> Self {
        Self::trim(vec![p])
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.rows.len() == 1 && self.rows[0].is_one()
    }

    /// Integer value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.rows.len() {
            0 => Some(BigInt::zero()),
            1 if self.rows[0].0.len() == 1 => Some(self.rows[0].0[0].clone()),
            _ => None,
        }
    }

    pub fn degree_q(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn degree_t(&self) -> usize {
        self.rows.iter().map(|r| r.deg()).max().unwrap_or(0)
    }

    /// Nonzero terms as (q exponent, t exponent, coefficient), sorted.
    pub fn terms(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = vec![];
        for (a, row) in self.rows.iter().enumerate() {
            for (b, c) in row.0.iter().enumerate() {
                if !c.is_zero() {
                    out.push((a, b, c.clone()));
                }
            }
        }
        out
    }

    pub fn coeff(&self, q: usize, t: usize) -> BigInt {
        self.rows.get(q).and_then(|r| r.0.get(t)).cloned().unwrap_or_default()
    }

    /// Terms sorted by total degree, then by the power of q.
    pub fn terms_graded(&self) -> Vec<(usize, usize, BigInt)> {
        let mut v = self.terms();
        v.sort_by_key(|(a, b, _)| (a + b, *a));
        v
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.rows.iter().all(|r| r.0.iter().all(|c| !c.is_negative()))
    }

    /// `self <= o` coefficient by coefficient.
    pub fn le_coefficientwise(&self, o: &BivariatePoly) -> bool {
        (o - self).has_nonnegative_coefficients()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::trim(self.rows.iter().map(|r| r.scale(c)).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Substitute t = 1.
    pub fn at_t_one(&self) -> Self {
        Self::trim(self.rows.iter().map(|r| UPoly::constant(r.0.iter().sum())).collect())
    }

    /// Substitute q = 0.
    pub fn at_q_zero(&self) -> Self {
        self.rows.first().map(|r| Self::from_upoly_t(r.clone())).unwrap_or_default()
    }

    pub fn eval(&self, q: &BigInt, t: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for r in self.rows.iter().rev() {
            acc = acc * q + r.eval(t);
        }
        acc
    }

    /// Swap the roles of q and t.
    pub fn swap_qt(&self) -> Self {
        Self::from_terms(self.terms().into_iter().map(|(a, b, c)| (b, a, c)))
    }

    fn lc(&self) -> &UPoly {
        self.rows.last().expect("zero polynomial")
    }

    /// Leading integer coefficient (highest q, then highest t).
    pub fn leading_coefficient(&self) -> BigInt {
        self.rows.last().map(|r| r.lc().clone()).unwrap_or_default()
    }

    fn content_t(&self) -> UPoly {
        let mut g = UPoly::default();
        for r in &self.rows {
            g = g.gcd(r);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for r in &self.rows {
            g = g.gcd(&r.content());
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn div_upoly(&self, d: &UPoly) -> Option<Self> {
        let rows = self.rows.iter().map(|r| r.div_exact(d)).collect::<Option<Vec<_>>>()?;
        Some(Self::trim(rows))
    }

    fn mul_upoly(&self, d: &UPoly) -> Self {
        Self::trim(self.rows.iter().map(|r| r.mul(d)).collect())
    }

    fn shift_q(&self, by: usize) -> Self {
        let mut rows = vec![UPoly::default(); by];
        rows.extend(self.rows.iter().cloned());
        Self::trim(rows)
    }

    /// Exact quotient, or None when `d` does not divide `self`.
    pub fn div_exact(&self, d: &BivariatePoly) -> Option<BivariatePoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.rows.len() == 1 {
            return self.div_upoly(&d.rows[0]);
        }
        let mut r = self.clone();
        let mut q = vec![UPoly::default(); self.rows.len().saturating_sub(d.rows.len()) + 1];
        while !r.is_zero() {
            if r.rows.len() < d.rows.len() {
                return None;
            }
            let s = r.rows.len() - d.rows.len();
            let c = r.lc().div_exact(d.lc())?;
            r = &r - &d.mul_upoly(&c).shift_q(s);
            q[s] = c;
        }
        Some(Self::trim(q))
    }

    fn prem(&self, o: &BivariatePoly) -> BivariatePoly {
        let mut r = self.clone();
        if r.rows.len() < o.rows.len() {
            return r;
        }
        let lc = o.lc().clone();
        let mut e = self.degree_q() - o.degree_q() + 1;
        while !r.is_zero() && r.rows.len() >= o.rows.len() {
            let s = r.rows.len() - o.rows.len();
            let c = r.lc().clone();
            r = &r.mul_upoly(&lc) - &o.mul_upoly(&c).shift_q(s);
            e -= 1;
        }
        r.mul_upoly(&lc.pow(e))
    }

    fn primitive_q(&self) -> (UPoly, BivariatePoly) {
        let c = self.content_t();
        let p = self.div_upoly(&c).expect("content divides");
        (c, p)
    }

    /// Greatest common divisor, normalised to a positive leading coefficient.
    pub fn gcd(&self, o: &BivariatePoly) -> BivariatePoly {
        if self.is_zero() || o.is_zero() {
            return self.gcd_prs(o);
        }
        if self.rows.len() == 1 && o.rows.len() == 1 {
            return Self::from_upoly_t(self.rows[0].fast_gcd(&o.rows[0]));
        }
        self.heuristic_gcd(o).unwrap_or_else(|| self.gcd_prs(o))
    }

    fn max_norm(&self) -> BigInt {
        self.rows.iter().map(|r| r.max_norm()).max().unwrap_or_default()
    }

    fn eval_q(&self, x: &BigInt) -> UPoly {
        let mut acc = UPoly::default();
        for r in self.rows.iter().rev() {
            acc = acc.scale(x).add(r);
        }
        acc
    }

    fn heuristic_gcd(&self, o: &BivariatePoly) -> Option<BivariatePoly> {
        let (ca, cb) = (self.integer_content(), o.integer_content());
        let c = ca.gcd(&cb);
        let a = self.scale_down(&ca);
        let b = o.scale_down(&cb);
        let mut xi = BigInt::from(2) * a.max_norm().min(b.max_norm()) + 2;
        for _ in 0..6 {
            let (x, y) = (a.eval_q(&xi), b.eval_q(&xi));
            if !x.is_zero() && !y.is_zero() {
                let h = x.fast_gcd(&y);
                let mut rows: Vec<Vec<BigInt>> = vec![];
                for (j, coeff) in h.0.iter().enumerate() {
                    for (i, d) in UPoly::from_digits(coeff.clone(), &xi).0.into_iter().enumerate() {
                        if rows.len() <= i {
                            rows.push(vec![]);
                        }
                        if rows[i].len() <= j {
                            rows[i].resize(j + 1, BigInt::zero());
                        }
                        rows[i][j] = d;
                    }
                }
                let g = Self::trim(rows.into_iter().map(UPoly::trim).collect());
                if !g.is_zero() {
                    let g = g.scale_down(&g.integer_content()).normalize_sign();
                    if a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                        return Some(g.scale(&c));
                    }
                }
            }
            xi = xi * 73794u32 / 27011u32 + 1;
        }
        None
    }

    fn scale_down(&self, c: &BigInt) -> BivariatePoly {
        if c.is_one() {
            return self.clone();
        }
        BivariatePoly { rows: self.rows.iter().map(|r| r.div_scalar(c)).collect() }
    }

    fn gcd_prs(&self, o: &BivariatePoly) -> BivariatePoly {
        if self.is_zero() {
            return o.normalize_sign();
        }
        if o.is_zero() {
            return self.normalize_sign();
        }
        if self.rows.len() == 1 && o.rows.len() == 1 {
            return Self::from_upoly_t(self.rows[0].gcd(&o.rows[0]));
        }
        let (ca, pa) = self.primitive_q();
        let (cb, pb) = o.primitive_q();
        let c = ca.gcd(&cb);
        if pa.rows.len() == 1 || pb.rows.len() == 1 {
            return Self::from_upoly_t(c);
        }
        let (mut f, mut g) = if pa.rows.len() >= pb.rows.len() { (pa, pb) } else { (pb, pa) };
        let mut gg = UPoly::one();
        let mut h = UPoly::one();
        loop {
            let delta = f.degree_q() - g.degree_q();
            let r = f.prem(&g);
            if r.is_zero() {
                break;
            }
            if r.rows.len() == 1 {
                return Self::from_upoly_t(c);
            }
            f = g;
            g = r.div_upoly(&gg.mul(&h.pow(delta))).expect("subresultant division");
            gg = f.lc().clone();
            h = match delta {
                0 => h,
                1 => gg.clone(),
                d => gg.pow(d).div_exact(&h.pow(d - 1)).expect("subresultant h"),
            };
        }
        let (_, pg) = g.primitive_q();
        pg.mul_upoly(&c).normalize_sign()
    }

    fn normalize_sign(&self) -> BivariatePoly {
        if !self.is_zero() && self.leading_coefficient().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms()
                .into_iter()
                .map(|(a, b, c)| serde_json::json!({"q": a, "t": b, "c": c.to_string()}))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let terms: Vec<JsonTerm> =
            serde_json::from_value(v.clone()).map_err(|e| Error::invalid(format!("polynomial json: {}", e)))?;
        let mut acc = Self::zero();
        for term in terms {
            let c: BigInt = term.c.parse().map_err(|_| Error::invalid(format!("bad coefficient {}", term.c)))?;
            acc += &Self::monomial(c, term.q, term.t);
        }
        Ok(acc)
    }

    pub fn to_latex(&self) -> String {
        format_poly(&self.terms_graded(), true)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    q: usize,
    t: usize,
    c: String,
}

fn monomial_str(a: usize, b: usize, latex: bool) -> String {
    let var = |name: &str, e: usize| match e {
        0 => String::new(),
        1 => name.to_string(),
        e if latex => format!("{}^{{{}}}", name, e),
        e => format!("{}^{}", name, e),
    };
    let (qs, ts) = (var("q", a), var("t", b));
    if !latex && !qs.is_empty() && !ts.is_empty() {
        format!("{}*{}", qs, ts)
    } else {
        format!("{}{}", qs, ts)
    }
}

fn format_poly(terms: &[(usize, usize, BigInt)], latex: bool) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (a, b, c)) in terms.iter().enumerate() {
        let mono = monomial_str(*a, *b, latex);
        let mag = c.abs();
        if c.is_negative() {
            s.push('-');
        } else if i > 0 {
            s.push('+');
        }
        if mono.is_empty() {
            s.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                s.push_str(&mag.to_string());
                if !latex {
                    s.push('*');
                }
            }
            s.push_str(&mono);
        }
    }
    s
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{}", format_poly(&self.terms_graded(), false))
    }
}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;

    fn add(self, o: &BivariatePoly) -> BivariatePoly {
        let n = self.rows.len().max(o.rows.len());
        let rows = (0..n)
            .map(|i| match (self.rows.get(i), o.rows.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                _ => unreachable!(),
            })
            .collect();
        BivariatePoly::trim(rows)
    }
}

impl<'a> Sub<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;

    fn sub(self, o: &BivariatePoly) -> BivariatePoly {
        self + &(-o)
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;

    fn neg(self) -> BivariatePoly {
        BivariatePoly { rows: self.rows.iter().map(|r| r.neg()).collect() }
    }
}

impl Neg for BivariatePoly {
    type Output = BivariatePoly;

    fn neg(self) -> BivariatePoly {
        -&self
    }
}

impl<'a> Mul<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;

    fn mul(self, o: &BivariatePoly) -> BivariatePoly {
        if self.is_zero() || o.is_zero() {
            return BivariatePoly::zero();
        }
        let mut rows = vec![UPoly::default(); self.rows.len() + o.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.rows.iter().enumerate() {
                if !b.is_zero() {
                    rows[i + j] = rows[i + j].add(&a.mul(b));
                }
            }
        }
        BivariatePoly::trim(rows)
    }
}

impl Add for BivariatePoly {
    type Output = BivariatePoly;

    fn add(self, o: BivariatePoly) -> BivariatePoly {
        &self + &o
    }
}

impl Sub for BivariatePoly {
    type Output = BivariatePoly;

    fn sub(self, o: BivariatePoly) -> BivariatePoly {
        &self - &o
    }
}

impl Mul for BivariatePoly {
    type Output = BivariatePoly;

    fn mul(self, o: BivariatePoly) -> BivariatePoly {
        &self * &o
    }
}

impl AddAssign<&BivariatePoly> for BivariatePoly {
    fn add_assign(&mut self, o: &BivariatePoly) {
        *self = &*self + o;
    }
}

impl SubAssign<&BivariatePoly> for BivariatePoly {
    fn sub_assign(&mut self, o: &BivariatePoly) {
        *self = &*self - o;
    }
}

impl From<i64> for BivariatePoly {
    fn from(c: i64) -> Self {
        BivariatePoly::constant(c)
    }
}

/// Reduced fraction of two `BivariatePoly` with a denominator whose
/// leading coefficient is positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BivariateRational {
    num: BivariatePoly,
    den: BivariatePoly,
}

impl BivariateRational {
    pub fn new(num: BivariatePoly, den: BivariatePoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::arith("zero denominator"));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: BivariatePoly, den: BivariatePoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = if let Some(c) = den.as_constant() {
            BivariatePoly::constant(c.gcd(&num.integer_content()))
        } else if let Some(c) = num.as_constant() {
            BivariatePoly::constant(c.gcd(&den.integer_content()))
        } else {
            num.gcd(&den)
        };
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        if den.leading_coefficient().is_negative() {
            num = -num;
            den = -den;
        }
        BivariateRational { num, den }
    }

    pub fn zero() -> Self {
        BivariateRational { num: BivariatePoly::zero(), den: BivariatePoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(BivariatePoly::one())
    }

    pub fn from_poly(p: BivariatePoly) -> Self {
        BivariateRational { num: p, den: BivariatePoly::one() }
    }

    pub fn from_integers(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        Self::new(BivariatePoly::constant(n), BivariatePoly::constant(d))
    }

    pub fn numerator(&self) -> &BivariatePoly {
        &self.num
    }

    pub fn denominator(&self) -> &BivariatePoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value when the denominator is 1.
    pub fn to_poly(&self) -> Option<BivariatePoly> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inverse()?)
    }

    pub fn scale_poly(&self, p: &BivariatePoly) -> Self {
        let g = if self.den.is_one() { BivariatePoly::one() } else { p.gcd(&self.den) };
        if g.is_one() {
            return BivariateRational { num: &self.num * p, den: self.den.clone() };
        }
        let p2 = p.div_exact(&g).unwrap();
        let d2 = self.den.div_exact(&g).unwrap();
        Self::reduce(&self.num * &p2, d2)
    }
}

impl<'a> Add<&'a BivariateRational> for &'a BivariateRational {
    type Output = BivariateRational;

    fn add(self, o: &BivariateRational) -> BivariateRational {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return BivariateRational::reduce(&self.num + &o.num, self.den.clone());
        }
        if self.den.is_one() {
            return BivariateRational { num: &(&self.num * &o.den) + &o.num, den: o.den.clone() };
        }
        if o.den.is_one() {
            return BivariateRational { num: &self.num + &(&o.num * &self.den), den: self.den.clone() };
        }
        let g = if let (Some(a), Some(b)) = (self.den.as_constant(), o.den.as_constant()) {
            BivariatePoly::constant(a.gcd(&b))
        } else {
            self.den.gcd(&o.den)
        };
        let a = self.den.div_exact(&g).unwrap();
        let b = o.den.div_exact(&g).unwrap();
        let num = &(&self.num * &b) + &(&o.num * &a);
        let den = &(&a * &b) * &g;
        BivariateRational::reduce(num, den)
    }
}

impl<'a> Sub<&'a BivariateRational> for &'a BivariateRational {
    type Output = BivariateRational;

    fn sub(self, o: &BivariateRational) -> BivariateRational {
        self + &(-o)
    }
}

impl Neg for &BivariateRational {
    type Output = BivariateRational;

    fn neg(self) -> BivariateRational {
        BivariateRational { num: -&self.num, den: self.den.clone() }
    }
}

impl<'a> Mul<&'a BivariateRational> for &'a BivariateRational {
    type Output = BivariateRational;

    fn mul(self, o: &BivariateRational) -> BivariateRational {
        if self.is_zero() || o.is_zero() {
            return BivariateRational::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return BivariateRational::from_poly(&self.num * &o.num);
        }
        let cross = |n: &BivariatePoly, d: &BivariatePoly| {
            if d.is_one() {
                (n.clone(), d.clone())
            } else if let Some(c) = d.as_constant() {
                let g = BivariatePoly::constant(c.gcd(&n.integer_content()));
                (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
            } else {
                let g = n.gcd(d);
                (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
            }
        };
        let (n1, d2) = cross(&self.num, &o.den);
        let (n2, d1) = cross(&o.num, &self.den);
        let mut num = &n1 * &n2;
        let mut den = &d1 * &d2;
        if den.leading_coefficient().is_negative() {
            num = -num;
            den = -den;
        }
        BivariateRational { num, den }
    }
}

impl AddAssign<&BivariateRational> for BivariateRational {
    fn add_assign(&mut self, o: &BivariateRational) {
        *self = &*self + o;
    }
}

impl SubAssign<&BivariateRational> for BivariateRational {
    fn sub_assign(&mut self, o: &BivariateRational) {
        *self = &*self - o;
    }
}

impl fmt::Display for BivariateRational {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for BivariateRational {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Laurent polynomial in q and t, sparse.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct LaurentPoly {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl LaurentPoly {
    pub fn from_poly(p: &BivariatePoly) -> Self {
        LaurentPoly { terms: p.terms().into_iter().map(|(a, b, c)| ((a as i64, b as i64), c)).collect() }
    }

    /// t -> 1/t.
    pub fn invert_t(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&(a, b), c)| ((a, -b), c.clone())).collect() }
    }

    pub fn shift_t(&self, by: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&(a, b), c)| ((a, b + by), c.clone())).collect() }
    }

    pub fn min_t(&self) -> Option<i64> {
        self.terms.keys().map(|&(_, b)| b).min()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_poly(&self) -> Option<BivariatePoly> {
        if self.terms.keys().any(|&(a, b)| a < 0 || b < 0) {
            return None;
        }
        Some(BivariatePoly::from_terms(self.terms.iter().map(|(&(a, b), c)| (a as usize, b as usize, c.clone()))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(usize, usize, i64)]) -> BivariatePoly {
        BivariatePoly::from_terms(terms.iter().copied())
    }

    fn one_minus(a: usize, b: usize) -> BivariatePoly {
        &BivariatePoly::one() - &BivariatePoly::monomial(1, a, b)
    }

    #[test]
    fn arithmetic() {
        let x = p(&[(0, 0, 1), (1, 2, 1)]);
        let y = p(&[(0, 1, 2), (0, 0, -1)]);
        let prod = &x * &y;
        assert_eq!(prod, p(&[(0, 1, 2), (0, 0, -1), (1, 3, 2), (1, 2, -1)]));
        assert_eq!(prod.div_exact(&y).unwrap(), x);
        assert!(x.div_exact(&y).is_none());
        assert_eq!(x.to_string(), "1+q*t^2");
        assert_eq!(x.to_latex(), "1+qt^{2}");
    }

    #[test]
    fn gcd_of_products() {
        let a = &one_minus(1, 1) * &one_minus(0, 2);
        let b = &one_minus(0, 1) * &one_minus(1, 1);
        let g = a.gcd(&b);
        assert_eq!(g, &one_minus(1, 1) * &one_minus(0, 1));
        let c = &(&one_minus(2, 1) * &one_minus(1, 3)).scale(&BigInt::from(6)) * &one_minus(0, 3);
        let d = &(&one_minus(1, 3) * &one_minus(3, 0)).scale(&BigInt::from(4)) * &one_minus(0, 1);
        let g = c.gcd(&d);
        assert_eq!(g, (&one_minus(1, 3) * &one_minus(0, 1)).scale(&BigInt::from(2)));
        assert_eq!(one_minus(1, 0).gcd(&one_minus(0, 1)), BivariatePoly::one());
    }

    #[test]
    fn heuristic_gcd_agrees_with_prs() {
        let factors = [one_minus(1, 1), one_minus(0, 2), one_minus(2, 3), p(&[(0, 0, 3), (1, 0, 2)]), p(&[(1, 2, 5), (0, 0, -7)])];
        for mask_a in 1u32..32 {
            for mask_b in [3u32, 5, 12, 18, 31] {
                let build = |m: u32| {
                    (0..5).filter(|i| m & (1 << i) != 0).fold(BivariatePoly::constant(6), |acc, i| &acc * &factors[i])
                };
                let (a, b) = (build(mask_a), build(mask_b).scale(&BigInt::from(4)));
                assert_eq!(a.gcd(&b), a.gcd_prs(&b).normalize_sign(), "{} | {}", a, b);
            }
        }
    }

    #[test]
    fn rational_normal_form() {
        let a = BivariateRational::new(&one_minus(0, 2) * &one_minus(1, 0), &one_minus(0, 1) * &one_minus(1, 0)).unwrap();
        assert_eq!(a, BivariateRational::from_poly(p(&[(0, 0, 1), (0, 1, 1)])));
        let half = BivariateRational::from_integers(1, 2).unwrap();
        let third = BivariateRational::from_integers(-1, -3).unwrap();
        assert_eq!(&half + &third, BivariateRational::from_integers(5, 6).unwrap());
        let x = BivariateRational::new(BivariatePoly::one(), one_minus(0, 1)).unwrap();
        let y = BivariateRational::new(BivariatePoly::t(), one_minus(0, 1)).unwrap();
        assert_eq!(&x - &y, BivariateRational::one());
        assert!(BivariateRational::new(BivariatePoly::one(), BivariatePoly::zero()).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let x = p(&[(0, 0, 3), (2, 1, -7)]);
        assert_eq!(BivariatePoly::from_json(&x.to_json()).unwrap(), x);
    }
}
