//! Truncated power series in `x` with bivariate polynomial coefficients.
//!
//! With `F = sum A_n(s,t) x^n` and `I+`, `I-`, `S` the series over sum-
//! indecomposable, skew-indecomposable and simple permutations (the last
//! from `n = 4`), the decomposition of a permutation gives
//!
//! ```text
//! F  = x + I+ F + st I- F + S(F)
//! I+ = x + st I- F + S(F)
//! I- = x + I+ F + S(F)
//! ```
//!
//! whose solution is `I+ = F/(1+F)`, `I- = F/(1+stF)` and
//! `S(F) + x = F(1 - stF^2)/((1+F)(1+stF))`. Substituting `x = G(u)` for
//! the compositional inverse `G` of `F` gives
//! `S(u) = -G(u) + u/(1+stu) + u/(1+u) - u`, so `simp_n` is read off the
//! inverse of the Eulerian series. All quotients are truncated geometric
//! series.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::enumerate::{check_enumeration_bound, par_fold, DesIdesCounter, MAX_ENUMERATION_N};
use crate::error::{Error, Result};
use crate::poly::{gamma_expand_bivariate, is_palindromic_bivariate, BivarPoly};
use crate::rsk::{rsk_two_sided_eulerian, MAX_RSK_N};

#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    order: usize,
    /// `coeffs[k]` multiplies `x^k`, `k = 0..=order`.
    coeffs: Vec<BivarPoly>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries { order, coeffs: vec![BivarPoly::zero(); order + 1] }
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        let mut out = Self::zero(order);
        if order >= 1 {
            out.coeffs[1] = BivarPoly::one();
        }
        out
    }

    /// Series with constant term `c0` and `c_k = coeffs[k-1]`; truncated
    /// or zero-padded to `order`.
    pub fn new(order: usize, c0: BivarPoly, coeffs: Vec<BivarPoly>) -> Self {
        let mut out = Self::zero(order);
        out.coeffs[0] = c0;
        for (k, c) in coeffs.into_iter().enumerate().take(order) {
            out.coeffs[k + 1] = c;
        }
        out
    }

    /// Series without constant term from `c_1, c_2, ...`.
    pub fn from_coeffs(order: usize, coeffs: Vec<BivarPoly>) -> Self {
        Self::new(order, BivarPoly::zero(), coeffs)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `x^k` (zero beyond the order).
    pub fn coeff(&self, k: usize) -> &BivarPoly {
        static ZERO: BivarPoly = BivarPoly::zero();
        self.coeffs.get(k).unwrap_or(&ZERO)
    }

    pub fn set_coeff(&mut self, k: usize, c: BivarPoly) {
        if k <= self.order {
            self.coeffs[k] = c;
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        PowerSeries { order, coeffs: self.coeffs[..=order].to_vec() }
    }

    fn combine(&self, other: &Self, f: impl Fn(&BivarPoly, &BivarPoly) -> BivarPoly) -> Self {
        let order = self.order.min(other.order);
        PowerSeries { order, coeffs: (0..=order).map(|k| f(&self.coeffs[k], &other.coeffs[k])).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += &(a * b);
                }
            }
        }
        out
    }

    /// Multiplies every coefficient by `p`.
    pub fn scale_poly(&self, p: &BivarPoly) -> Self {
        PowerSeries { order: self.order, coeffs: self.coeffs.iter().map(|c| c * p).collect() }
    }

    /// `x -> st x`: coefficient `k` gains `(st)^k`.
    pub fn substitute_st_x(&self) -> Self {
        PowerSeries {
            order: self.order,
            coeffs: self.coeffs.iter().enumerate().map(|(k, c)| c.shift(k, k)).collect(),
        }
    }

    fn require_no_constant(&self, what: &str) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::Domain(format!("{what} requires a series with zero constant term")))
        }
    }

    /// `self(inner)` by Horner's rule; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        inner.require_no_constant("composition")?;
        let order = self.order.min(inner.order);
        let mut acc = Self::zero(order);
        for k in (0..=order).rev() {
            acc = acc.mul(inner);
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// `1/(1+Y) = sum (-Y)^k`; `Y` must have zero constant term.
    pub fn geometric_inverse_one_plus(y: &Self) -> Result<Self> {
        y.require_no_constant("geometric expansion")?;
        let neg = y.scale_poly(&BivarPoly::constant(-1));
        let mut out = Self::zero(y.order);
        out.coeffs[0] = BivarPoly::one();
        let mut power = out.clone();
        for _ in 1..=y.order {
            power = power.mul(&neg);
            out = out.add(&power);
        }
        Ok(out)
    }

    /// `[F, F^2, ..., F^order]`, each truncated at the order.
    fn powers(&self) -> Vec<Self> {
        let mut out = vec![self.clone()];
        for _ in 1..self.order {
            let next = out.last().unwrap().mul(self);
            out.push(next);
        }
        out
    }

    /// Compositional inverse `G` with `G(F(x)) = F(G(x)) = x`; requires
    /// `c_0 = 0` and `c_1 = 1`.
    pub fn functional_inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Inversion("constant term is nonzero".into()));
        }
        if self.order == 0 {
            return Err(Error::Inversion("order 0 series has no linear term".into()));
        }
        if self.coeffs[1] != BivarPoly::one() {
            return Err(Error::Inversion(format!("linear coefficient is {}, expected 1", self.coeffs[1])));
        }
        // G(F) = x: g_1 = 1 and g_n = -sum_{k<n} g_k [x^n] F^k.
        let powers = self.powers();
        let mut g = Self::x(self.order);
        for n in 2..=self.order {
            let mut c = BivarPoly::zero();
            for k in 1..n {
                if !g.coeffs[k].is_zero() {
                    c += &(&g.coeffs[k] * &powers[k - 1].coeffs[n]);
                }
            }
            g.coeffs[n] = -c;
        }
        Ok(g)
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeries({self})")
    }
}

/// `c0 + (c1)*x + (c2)*x^2 + ... + O(x^(N+1))`, zero terms omitted.
impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    #[serde(default, skip_serializing_if = "BivarPoly::is_zero")]
    constant: BivarPoly,
    coefficients: Vec<BivarPoly>,
}

/// JSON form `{"order": N, "coefficients": [c_1, ..., c_N]}`, plus
/// `"constant"` when the constant term is nonzero.
impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson { order: self.order, constant: self.coeffs[0].clone(), coefficients: self.coeffs[1..].to_vec() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let j = SeriesJson::deserialize(deserializer)?;
        if j.coefficients.len() != j.order {
            return Err(serde::de::Error::custom(format!(
                "order {} but {} coefficients",
                j.order,
                j.coefficients.len()
            )));
        }
        Ok(PowerSeries::new(j.order, j.constant, j.coefficients))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerianMethod {
    Enumerate,
    Rsk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimpleMethod {
    /// Compositional inverse of the Eulerian series from the tableau route.
    Inversion,
    Enumerate,
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        Err(Error::Input("series order must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `F = sum_{n=1}^{N} A_n(s,t) x^n`.
pub fn eulerian_series(order: usize, method: EulerianMethod) -> Result<PowerSeries> {
    check_order(order)?;
    let coeffs = match method {
        EulerianMethod::Enumerate => {
            check_enumeration_bound(order, MAX_ENUMERATION_N).map_err(|e| with_hint(e, "use the rsk method"))?;
            (1..=order)
                .map(|n| crate::enumerate::eulerian_by_enumeration(n).map(|d| d.into_poly()))
                .collect::<Result<Vec<_>>>()?
        }
        EulerianMethod::Rsk => (1..=order).map(rsk_two_sided_eulerian).collect::<Result<Vec<_>>>()?,
    };
    Ok(PowerSeries::from_coeffs(order, coeffs))
}

fn with_hint(e: Error, hint: &str) -> Error {
    match e {
        Error::Resource { what, n, bound, .. } => Error::Resource { what, n, bound, hint: Some(hint.into()) },
        other => other,
    }
}

/// `(I+, I-) = (F/(1+F), F/(1+stF))`.
pub fn indecomposable_series(f: &PowerSeries) -> Result<(PowerSeries, PowerSeries)> {
    let plus = f.mul(&PowerSeries::geometric_inverse_one_plus(f)?);
    let st = BivarPoly::monomial(1, 1, 1);
    let minus = f.mul(&PowerSeries::geometric_inverse_one_plus(&f.scale_poly(&st))?);
    Ok((plus, minus))
}

/// `u/(1+stu) + u/(1+u) - u` to the given order.
fn boundary_terms(order: usize) -> PowerSeries {
    let mut out = PowerSeries::zero(order);
    for n in 1..=order {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let mut c = BivarPoly::monomial(sign, n - 1, n - 1) + BivarPoly::constant(sign);
        if n == 1 {
            c -= &BivarPoly::one();
        }
        out.coeffs[n] = c;
    }
    out
}

/// `S(u) = -G(u) + u/(1+stu) + u/(1+u) - u` for `G` the inverse of `F`.
pub fn simple_series_from_eulerian(f: &PowerSeries) -> Result<PowerSeries> {
    let g = f.functional_inverse()?;
    Ok(boundary_terms(f.order).sub(&g))
}

/// `S = sum_{n>=4} simp_n(s,t) x^n`.
pub fn simple_series(order: usize, method: SimpleMethod) -> Result<PowerSeries> {
    check_order(order)?;
    match method {
        SimpleMethod::Inversion => {
            if order > MAX_RSK_N {
                return Err(Error::Resource { what: "inversion route for simp_n", n: order, bound: MAX_RSK_N, hint: None });
            }
            simple_series_from_eulerian(&eulerian_series(order, EulerianMethod::Rsk)?)
        }
        SimpleMethod::Enumerate => {
            check_enumeration_bound(order, MAX_ENUMERATION_N).map_err(|e| with_hint(e, "use the inversion method"))?;
            let coeffs = (1..=order)
                .map(|n| {
                    if n < 4 {
                        Ok(BivarPoly::zero())
                    } else {
                        crate::enumerate::simple_by_enumeration(n).map(|d| d.into_poly())
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(PowerSeries::from_coeffs(order, coeffs))
        }
    }
}

/// `F`, `I+`, `I-` and `S` by enumeration, each to the given order.
#[derive(Debug, Clone)]
pub struct EnumeratedSystem {
    pub f: PowerSeries,
    pub plus: PowerSeries,
    pub minus: PowerSeries,
    pub simple: PowerSeries,
}

pub fn enumerate_system(order: usize) -> Result<EnumeratedSystem> {
    check_order(order)?;
    check_enumeration_bound(order, MAX_ENUMERATION_N)?;
    let mut sys = EnumeratedSystem {
        f: PowerSeries::zero(order),
        plus: PowerSeries::zero(order),
        minus: PowerSeries::zero(order),
        simple: PowerSeries::zero(order),
    };
    for n in 1..=order {
        let counters = || std::array::from_fn::<_, 4, _>(|_| DesIdesCounter::new(n));
        let [all, plus, minus, simple] = par_fold(
            n,
            counters,
            |mut acc, p| {
                acc[0].add(p);
                if p.is_sum_indecomposable() {
                    acc[1].add(p);
                }
                if p.is_skew_indecomposable() {
                    acc[2].add(p);
                }
                if n >= 4 && p.is_simple() {
                    acc[3].add(p);
                }
                acc
            },
            |a, b| {
                let mut b = b.into_iter();
                a.map(|x| x.merge(b.next().unwrap()))
            },
        )?;
        sys.f.coeffs[n] = all.finish().into_poly();
        sys.plus.coeffs[n] = plus.finish().into_poly();
        sys.minus.coeffs[n] = minus.finish().into_poly();
        sys.simple.coeffs[n] = simple.finish().into_poly();
    }
    Ok(sys)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SystemReport {
    pub order: usize,
    pub checks: Vec<IdentityCheck>,
}

impl SystemReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, name: &str, lhs: &PowerSeries, rhs: &PowerSeries) {
        let detail = (1..=self.order)
            .find(|&k| lhs.coeff(k) != rhs.coeff(k) || (k == 1 && lhs.coeff(0) != rhs.coeff(0)))
            .map(|k| format!("first mismatch at x^{k}: {} vs {}", lhs.coeff(k), rhs.coeff(k)));
        self.checks.push(IdentityCheck { name: name.into(), passed: detail.is_none(), detail });
    }

    fn record_bool(&mut self, name: &str, failure: Option<String>) {
        self.checks.push(IdentityCheck { name: name.into(), passed: failure.is_none(), detail: failure });
    }
}

/// Checks the defining system, its closed-form solution, the inversion
/// formula for `S`, and the reversal symmetries, against enumeration.
pub fn verify_system_identities(order: usize) -> Result<SystemReport> {
    let sys = enumerate_system(order)?;
    let EnumeratedSystem { f, plus, minus, simple } = &sys;
    let x = PowerSeries::x(order);
    let st = BivarPoly::monomial(1, 1, 1);
    let s_of_f = simple.compose(f)?;
    let mut report = SystemReport { order, checks: Vec::new() };

    let system = |ip: &PowerSeries, im: &PowerSeries, sf: &PowerSeries| {
        let ipf = ip.mul(f);
        let st_imf = im.mul(f).scale_poly(&st);
        (
            x.add(&ipf).add(&st_imf).add(sf),
            x.add(&st_imf).add(sf),
            x.add(&ipf).add(sf),
        )
    };
    let (f_rhs, plus_rhs, minus_rhs) = system(plus, minus, &s_of_f);
    report.record("F = x + I+ F + st I- F + S(F)", f, &f_rhs);
    report.record("I+ = x + st I- F + S(F)", plus, &plus_rhs);
    report.record("I- = x + I+ F + S(F)", minus, &minus_rhs);

    let (plus_sol, minus_sol) = indecomposable_series(f)?;
    report.record("I+ = F/(1+F)", plus, &plus_sol);
    report.record("I- = F/(1+stF)", minus, &minus_sol);
    let one_minus_stf2 = PowerSeries::new(order, BivarPoly::one(), vec![]).sub(&f.mul(f).scale_poly(&st));
    let sf_sol = f
        .mul(&one_minus_stf2)
        .mul(&PowerSeries::geometric_inverse_one_plus(f)?)
        .mul(&PowerSeries::geometric_inverse_one_plus(&f.scale_poly(&st))?)
        .sub(&x);
    report.record("S(F) + x = F(1 - stF^2)/((1+F)(1+stF))", &s_of_f, &sf_sol);
    let (f_sol, plus_sol2, minus_sol2) = system(&plus_sol, &minus_sol, &sf_sol);
    report.record("closed forms satisfy the F identity", f, &f_sol);
    report.record("closed forms satisfy the I+ identity", &plus_sol, &plus_sol2);
    report.record("closed forms satisfy the I- identity", &minus_sol, &minus_sol2);

    let s_inv = simple_series_from_eulerian(f)?;
    report.record("S(u) = -G(u) + u/(1+stu) + u/(1+u) - u", simple, &s_inv);
    let g = f.functional_inverse()?;
    let cor = (4..=order).find(|&n| {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let expected = &(&BivarPoly::constant(sign) + &BivarPoly::monomial(sign, n - 1, n - 1)) - g.coeff(n);
        &expected != simple.coeff(n)
    });
    report.record_bool(
        "simp_n = -g_n + (-1)^(n-1) + (-st)^(n-1) for n >= 4",
        cor.map(|n| format!("fails at n = {n}")),
    );
    report.record("F(G(x)) = x", &f.compose(&g)?, &x);
    report.record("G(F(x)) = x", &g.compose(f)?, &x);

    let pal = (1..=order).find(|&n| !is_palindromic_bivariate(f.coeff(n), n - 1));
    report.record_bool("A_n(s,t) = (st)^(n-1) A_n(1/s,1/t)", pal.map(|n| format!("fails at n = {n}")));
    let rev = (1..=order).find(|&n| plus.coeff(n).reciprocal(n - 1).as_ref() != Some(minus.coeff(n)));
    report.record_bool("I-_n(s,t) = (st)^(n-1) I+_n(1/s,1/t)", rev.map(|n| format!("fails at n = {n}")));
    let rev_s = (4..=order).find(|&n| !is_palindromic_bivariate(simple.coeff(n), n - 1));
    report.record_bool("simp_n palindromic of darga n-1", rev_s.map(|n| format!("fails at n = {n}")));
    Ok(report)
}

/// Gamma-positivity of `simp_n` for `4 <= n <= order` from the given series.
pub fn simple_gamma_positive(s: &PowerSeries) -> Result<Vec<(usize, bool)>> {
    (4..=s.order())
        .map(|n| Ok((n, gamma_expand_bivariate(s.coeff(n), n - 1)?.is_gamma_positive())))
        .collect()
}
