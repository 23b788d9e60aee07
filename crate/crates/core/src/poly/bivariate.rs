use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{checked_add, checked_mul, Coeff};
use crate::error::{Error, Result};

/// Exact integer polynomial in two commuting variables `s` and `t`.
///
/// Stored densely: `coeffs[p * cols + q]` is the coefficient of `s^p t^q`.
/// The grid is kept trimmed (no all-zero trailing row or column), so
/// structural equality is polynomial equality and the zero polynomial has
/// an empty grid.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BivarPoly {
    rows: usize,
    cols: usize,
    coeffs: Vec<Coeff>,
}

impl BivarPoly {
    pub const fn zero() -> Self {
        BivarPoly { rows: 0, cols: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c * s^p * t^q`
    pub fn monomial(c: Coeff, p: usize, q: usize) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let mut out = Self::with_dims(p + 1, q + 1);
        out.coeffs[p * (q + 1) + q] = c;
        out
    }

    pub fn s() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// Builds from `(s_degree, t_degree, coefficient)` triples; repeated
    /// monomials are summed.
    pub fn from_terms<I: IntoIterator<Item = (usize, usize, Coeff)>>(terms: I) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        let rows = terms.iter().map(|t| t.0 + 1).max().unwrap_or(0);
        let cols = terms.iter().map(|t| t.1 + 1).max().unwrap_or(0);
        let mut out = Self::with_dims(rows, cols);
        for (p, q, c) in terms {
            let slot = &mut out.coeffs[p * cols + q];
            *slot = checked_add(*slot, c);
        }
        out.normalize();
        out
    }

    /// Builds from a dense row-major grid (`grid[p * cols + q]`).
    pub fn from_grid(rows: usize, cols: usize, grid: Vec<Coeff>) -> Self {
        assert_eq!(grid.len(), rows * cols, "grid size mismatch");
        let mut out = BivarPoly { rows, cols, coeffs: grid };
        out.normalize();
        out
    }

    fn with_dims(rows: usize, cols: usize) -> Self {
        BivarPoly { rows, cols, coeffs: vec![0; rows * cols] }
    }

    fn normalize(&mut self) {
        let mut rows = self.rows;
        while rows > 0 && self.coeffs[(rows - 1) * self.cols..rows * self.cols].iter().all(|&c| c == 0) {
            rows -= 1;
        }
        let mut cols = self.cols;
        while cols > 0 && (0..rows).all(|p| self.coeffs[p * self.cols + cols - 1] == 0) {
            cols -= 1;
        }
        if rows == 0 || cols == 0 {
            *self = Self::default();
            return;
        }
        if rows != self.rows || cols != self.cols {
            let mut coeffs = Vec::with_capacity(rows * cols);
            for p in 0..rows {
                coeffs.extend_from_slice(&self.coeffs[p * self.cols..p * self.cols + cols]);
            }
            *self = BivarPoly { rows, cols, coeffs };
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `s^p t^q`.
    pub fn coeff(&self, p: usize, q: usize) -> Coeff {
        if p < self.rows && q < self.cols {
            self.coeffs[p * self.cols + q]
        } else {
            0
        }
    }

    /// Highest power of `s`, `None` for the zero polynomial.
    pub fn deg_s(&self) -> Option<usize> {
        self.rows.checked_sub(1)
    }

    pub fn deg_t(&self) -> Option<usize> {
        self.cols.checked_sub(1)
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms().map(|(p, q, _)| p + q).max()
    }

    /// Nonzero terms `(p, q, c)` ordered by total degree, then by `s`-degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, Coeff)> + '_ {
        let rows = self.rows;
        let cols = self.cols;
        let max_total = (rows + cols).saturating_sub(2);
        (0..=max_total)
            .flat_map(move |d| {
                let lo = d.saturating_sub(cols.saturating_sub(1));
                let hi = d.min(rows.saturating_sub(1));
                (lo..=hi).map(move |p| (p, d - p))
            })
            .filter(move |_| rows > 0)
            .filter_map(move |(p, q)| {
                let c = self.coeffs[p * cols + q];
                (c != 0).then_some((p, q, c))
            })
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Sum of coefficients, i.e. the value at `s = t = 1`.
    pub fn eval_one(&self) -> Coeff {
        self.coeffs.iter().fold(0, |acc, &c| checked_add(acc, c))
    }

    pub fn eval(&self, s: Coeff, t: Coeff) -> Coeff {
        let mut acc = 0;
        for (p, q, c) in self.terms() {
            let mut m = c;
            for _ in 0..p {
                m = checked_mul(m, s);
            }
            for _ in 0..q {
                m = checked_mul(m, t);
            }
            acc = checked_add(acc, m);
        }
        acc
    }

    /// `P(t, s)`.
    pub fn swap_variables(&self) -> Self {
        let mut out = Self::with_dims(self.cols, self.rows);
        for p in 0..self.rows {
            for q in 0..self.cols {
                out.coeffs[q * self.rows + p] = self.coeffs[p * self.cols + q];
            }
        }
        out
    }

    /// `(st)^m P(1/s, 1/t)`, or `None` if some degree exceeds `m`.
    pub fn reciprocal(&self, m: usize) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.rows > m + 1 || self.cols > m + 1 {
            return None;
        }
        Some(Self::from_terms(self.terms().map(|(p, q, c)| (m - p, m - q, c))))
    }

    /// Multiply every coefficient by `k`.
    pub fn scale(&self, k: Coeff) -> Self {
        if k == 0 {
            return Self::zero();
        }
        BivarPoly {
            rows: self.rows,
            cols: self.cols,
            coeffs: self.coeffs.iter().map(|&c| checked_mul(c, k)).collect(),
        }
    }

    /// Multiply by the monomial `s^p t^q`.
    pub fn shift(&self, p: usize, q: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = Self::with_dims(self.rows + p, self.cols + q);
        for a in 0..self.rows {
            for b in 0..self.cols {
                out.coeffs[(a + p) * out.cols + b + q] = self.coeffs[a * self.cols + b];
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// In-place `self += c * s^p * t^q`.
    pub fn add_monomial(&mut self, c: Coeff, p: usize, q: usize) {
        if c == 0 {
            return;
        }
        if p >= self.rows || q >= self.cols {
            self.grow(p + 1, q + 1);
        }
        let slot = &mut self.coeffs[p * self.cols + q];
        *slot = checked_add(*slot, c);
        self.normalize();
    }

    fn grow(&mut self, rows: usize, cols: usize) {
        let rows = rows.max(self.rows);
        let cols = cols.max(self.cols);
        let mut coeffs = vec![0; rows * cols];
        for p in 0..self.rows {
            coeffs[p * cols..p * cols + self.cols]
                .copy_from_slice(&self.coeffs[p * self.cols..(p + 1) * self.cols]);
        }
        *self = BivarPoly { rows, cols, coeffs };
    }

    fn add_scaled(&mut self, other: &Self, sign: Coeff) {
        if other.is_zero() {
            return;
        }
        self.grow(other.rows, other.cols);
        for p in 0..other.rows {
            for q in 0..other.cols {
                let c = other.coeffs[p * other.cols + q];
                if c != 0 {
                    let slot = &mut self.coeffs[p * self.cols + q];
                    *slot = checked_add(*slot, checked_mul(sign, c));
                }
            }
        }
        self.normalize();
    }
}

impl Add<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, 1);
        out
    }
}

impl Add for BivarPoly {
    type Output = BivarPoly;
    fn add(mut self, rhs: BivarPoly) -> BivarPoly {
        self.add_scaled(&rhs, 1);
        self
    }
}

impl AddAssign<&BivarPoly> for BivarPoly {
    fn add_assign(&mut self, rhs: &BivarPoly) {
        self.add_scaled(rhs, 1);
    }
}

impl Sub<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, -1);
        out
    }
}

impl Sub for BivarPoly {
    type Output = BivarPoly;
    fn sub(mut self, rhs: BivarPoly) -> BivarPoly {
        self.add_scaled(&rhs, -1);
        self
    }
}

impl SubAssign<&BivarPoly> for BivarPoly {
    fn sub_assign(&mut self, rhs: &BivarPoly) {
        self.add_scaled(rhs, -1);
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        self.scale(-1)
    }
}

impl Neg for BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        self.scale(-1)
    }
}

impl Mul<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        if self.is_zero() || rhs.is_zero() {
            return BivarPoly::zero();
        }
        let mut out = BivarPoly::with_dims(self.rows + rhs.rows - 1, self.cols + rhs.cols - 1);
        for p in 0..self.rows {
            for q in 0..self.cols {
                let a = self.coeffs[p * self.cols + q];
                if a == 0 {
                    continue;
                }
                for p2 in 0..rhs.rows {
                    let base = (p + p2) * out.cols + q;
                    for q2 in 0..rhs.cols {
                        let b = rhs.coeffs[p2 * rhs.cols + q2];
                        if b != 0 {
                            let slot = &mut out.coeffs[base + q2];
                            *slot = checked_add(*slot, checked_mul(a, b));
                        }
                    }
                }
            }
        }
        out.normalize();
        out
    }
}

impl Mul for BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: BivarPoly) -> BivarPoly {
        &self * &rhs
    }
}

impl fmt::Display for BivarPoly {
    /// `1 + 10*s*t + s*t^2 + s^2*t + 10*s^2*t^2 + s^3*t^3`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (p, q, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            if k == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if mag != 1 || (p == 0 && q == 0) {
                factors.push(mag.to_string());
            }
            for (var, e) in [("s", p), ("t", q)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarPoly({self})")
    }
}

/// Parses sums of terms like `3*s^2*t`, `-s*t`, `7`.
impl FromStr for BivarPoly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let err = |position: usize, message: String| Error::Parse { position: position + 1, message };
        let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(err(0, "empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let mut sign: Coeff = 1;
            if chars[i].1 == '+' || chars[i].1 == '-' {
                if chars[i].1 == '-' {
                    sign = -1;
                }
                i += 1;
            } else if !terms.is_empty() {
                return Err(err(chars[i].0, format!("expected '+' or '-', found {:?}", chars[i].1)));
            }
            let (mut c, mut p, mut q): (Coeff, usize, usize) = (sign, 0, 0);
            loop {
                let Some(&(pos, ch)) = chars.get(i) else {
                    return Err(err(text.len(), "unexpected end of input".into()));
                };
                let read_number = |i: &mut usize| -> Result<u128> {
                    let start = *i;
                    while *i < chars.len() && chars[*i].1.is_ascii_digit() {
                        *i += 1;
                    }
                    let digits: String = chars[start..*i].iter().map(|c| c.1).collect();
                    digits.parse().map_err(|_| err(chars[start.min(chars.len() - 1)].0, "expected a number".into()))
                };
                if ch.is_ascii_digit() {
                    let v = read_number(&mut i)?;
                    let v = Coeff::try_from(v).map_err(|_| err(pos, "coefficient too large".into()))?;
                    c = checked_mul(c, v);
                } else if ch == 's' || ch == 't' {
                    i += 1;
                    let mut e = 1usize;
                    if chars.get(i).map(|c| c.1) == Some('^') {
                        i += 1;
                        e = read_number(&mut i)? as usize;
                    }
                    if ch == 's' {
                        p += e;
                    } else {
                        q += e;
                    }
                } else {
                    return Err(err(pos, format!("unexpected character {ch:?}")));
                }
                match chars.get(i).map(|c| c.1) {
                    Some('*') => i += 1,
                    _ => break,
                }
            }
            terms.push((p, q, c));
        }
        Ok(BivarPoly::from_terms(terms))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    s: usize,
    t: usize,
    c: Coeff,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

/// JSON form `{"terms":[{"s":p,"t":q,"c":coeff}, ...]}`.
impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson { terms: self.terms().map(|(s, t, c)| TermJson { s, t, c }).collect() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BivarPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = PolyJson::deserialize(deserializer)?;
        Ok(BivarPoly::from_terms(json.terms.into_iter().map(|t| (t.s, t.t, t.c))))
    }
}
