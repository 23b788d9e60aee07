use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use super::{checked_add, checked_mul, Coeff};

/// Exact integer polynomial in one variable `q`; `coeffs[k]` is the
/// coefficient of `q^k`, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Coeff>", into = "Vec<Coeff>")]
pub struct UniPoly {
    coeffs: Vec<Coeff>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Coeff>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: Coeff, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `q^k (1+q)^e`
    pub fn gamma_basis(k: usize, e: usize) -> Self {
        let mut v = vec![0; k + e + 1];
        let mut binom: Coeff = 1;
        for r in 0..=e {
            v[k + r] = binom;
            binom = binom * (e - r) as Coeff / (r + 1) as Coeff;
        }
        Self::new(v)
    }

    pub fn coeff(&self, k: usize) -> Coeff {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl From<Vec<Coeff>> for UniPoly {
    fn from(v: Vec<Coeff>) -> Self {
        UniPoly::new(v)
    }
}

impl From<UniPoly> for Vec<Coeff> {
    fn from(p: UniPoly) -> Self {
        p.coeffs
    }
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| checked_add(self.coeff(k), rhs.coeff(k))).collect())
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| checked_add(self.coeff(k), -rhs.coeff(k))).collect())
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = checked_add(out[i + j], checked_mul(a, b));
            }
        }
        UniPoly::new(out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().filter(|(_, c)| **c != 0) {
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, 1) => f.write_str("q")?,
                (1, _) => write!(f, "{mag}*q")?,
                (_, 1) => write!(f, "q^{k}")?,
                _ => write!(f, "{mag}*q^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}
