//! Palindromicity tests and expansion in the gamma bases.
//!
//! The bivariate basis of darga `m` is
//! `{ (st)^i (s+t)^j (1+st)^(m-j-2i) : i, j >= 0, 2i + j <= m }`,
//! the univariate one `{ q^j (1+q)^(m-2j) : 2j <= m }`.
//!
//! Bivariate expansion first rewrites the polynomial in the elementary
//! symmetric functions `e1 = s+t`, `e2 = st`. For a fixed power `e1^j` the
//! remaining polynomial in `e2` is palindromic of darga `m - j` and is peeled
//! in the univariate basis.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{binomial, checked_add, checked_mul, BivarPoly, Coeff, UniPoly};
use crate::error::{Error, Result};

/// `(st)^i (s+t)^j (1+st)^(m-j-2i)`. Panics if `2i + j > m`.
pub fn bivariate_basis_element(m: usize, i: usize, j: usize) -> BivarPoly {
    assert!(2 * i + j <= m, "basis index ({i},{j}) out of range for darga {m}");
    let e = m - j - 2 * i;
    let mut terms = Vec::new();
    for a in 0..=j {
        for b in 0..=e {
            let c = checked_mul(binomial(j, a), binomial(e, b));
            // s^a t^(j-a) * (st)^b * (st)^i
            terms.push((a + b + i, j - a + b + i, c));
        }
    }
    BivarPoly::from_terms(terms)
}

/// Checks `P(s,t) = (st)^m P(1/s,1/t)` and `P(s,t) = P(t,s)`, naming the
/// first violated symmetry.
pub fn check_palindromic_bivariate(poly: &BivarPoly, m: usize) -> Result<()> {
    for (p, q, c) in poly.terms() {
        if p > m || q > m {
            return Err(Error::Expansion(format!(
                "term s^{p}*t^{q} exceeds darga {m} (reciprocity (st)^m P(1/s,1/t) fails)"
            )));
        }
        if poly.coeff(q, p) != c {
            return Err(Error::Expansion(format!(
                "s<->t symmetry fails: coeff(s^{p}t^{q}) = {c} but coeff(s^{q}t^{p}) = {}",
                poly.coeff(q, p)
            )));
        }
        if poly.coeff(m - p, m - q) != c {
            return Err(Error::Expansion(format!(
                "reciprocity for darga {m} fails: coeff(s^{p}t^{q}) = {c} but coeff(s^{}t^{}) = {}",
                m - p,
                m - q,
                poly.coeff(m - p, m - q)
            )));
        }
    }
    Ok(())
}

pub fn is_palindromic_bivariate(poly: &BivarPoly, m: usize) -> bool {
    check_palindromic_bivariate(poly, m).is_ok()
}

/// Coefficients of a polynomial in the bivariate gamma basis of darga `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivarGammaExpansion {
    darga: usize,
    gamma: BTreeMap<(usize, usize), Coeff>,
}

impl BivarGammaExpansion {
    /// Zero entries are dropped; `(i, j)` must satisfy `2i + j <= darga`.
    pub fn new<I: IntoIterator<Item = ((usize, usize), Coeff)>>(darga: usize, entries: I) -> Result<Self> {
        let mut gamma = BTreeMap::new();
        for ((i, j), c) in entries {
            if 2 * i + j > darga {
                return Err(Error::Index(format!("gamma index ({i},{j}) out of range for darga {darga}")));
            }
            let slot = gamma.entry((i, j)).or_insert(0);
            *slot = checked_add(*slot, c);
        }
        gamma.retain(|_, c| *c != 0);
        Ok(BivarGammaExpansion { darga, gamma })
    }

    pub fn darga(&self) -> usize {
        self.darga
    }

    pub fn get(&self, i: usize, j: usize) -> Coeff {
        self.gamma.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero coefficients in `(i, j)` order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), Coeff)> + '_ {
        self.gamma.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_gamma_positive(&self) -> bool {
        self.gamma.values().all(|&c| c >= 0)
    }

    /// `sum gamma_{i,j} (st)^i (s+t)^j (1+st)^(m-j-2i)`
    pub fn reconstruct(&self) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(i, j), &c) in &self.gamma {
            out += &bivariate_basis_element(self.darga, i, j).scale(c);
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct GammaEntryJson {
    i: usize,
    j: usize,
    c: Coeff,
}

#[derive(Serialize, Deserialize)]
struct GammaJson {
    darga: usize,
    gamma: Vec<GammaEntryJson>,
}

/// JSON form `{"darga":m,"gamma":[{"i":..,"j":..,"c":..}]}`.
impl Serialize for BivarGammaExpansion {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GammaJson {
            darga: self.darga,
            gamma: self.iter().map(|((i, j), c)| GammaEntryJson { i, j, c }).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BivarGammaExpansion {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = GammaJson::deserialize(deserializer)?;
        BivarGammaExpansion::new(json.darga, json.gamma.into_iter().map(|e| ((e.i, e.j), e.c)))
            .map_err(serde::de::Error::custom)
    }
}

/// Rewrites a symmetric polynomial as `sum E[j][i] e1^j e2^i`.
fn to_elementary_symmetric(poly: &BivarPoly) -> Result<Vec<Vec<Coeff>>> {
    let mut rest = poly.clone();
    let mut table: Vec<Vec<Coeff>> = Vec::new();
    // Leading term in lex order (largest s-degree, then t-degree) is s^a t^b with a >= b;
    // subtracting c * e1^(a-b) e2^b removes it without creating larger terms.
    while let Some((a, b, c)) = rest.terms().max_by_key(|&(p, q, _)| (p, q)) {
        if b > a {
            return Err(Error::Expansion(format!(
                "polynomial is not symmetric in s and t (stray term s^{a}*t^{b})"
            )));
        }
        let j = a - b;
        if table.len() <= j {
            table.resize(j + 1, Vec::new());
        }
        if table[j].len() <= b {
            table[j].resize(b + 1, 0);
        }
        table[j][b] = checked_add(table[j][b], c);
        for r in 0..=j {
            rest.add_monomial(-checked_mul(c, binomial(j, r)), r + b, j - r + b);
        }
    }
    Ok(table)
}

/// Unique expansion of a bivariate palindromic polynomial of darga `m`.
pub fn gamma_expand_bivariate(poly: &BivarPoly, m: usize) -> Result<BivarGammaExpansion> {
    check_palindromic_bivariate(poly, m)?;
    let table = to_elementary_symmetric(poly)?;
    let mut entries = Vec::new();
    for (j, row) in table.into_iter().enumerate() {
        if row.iter().all(|&c| c == 0) {
            continue;
        }
        if j > m {
            return Err(Error::Expansion(format!("(s+t)^{j} exceeds darga {m}")));
        }
        let uni = gamma_expand_univariate(&UniPoly::new(row), m - j)?;
        entries.extend(uni.gamma.iter().enumerate().map(|(i, &c)| ((i, j), c)));
    }
    BivarGammaExpansion::new(m, entries)
}

/// Coefficients in the univariate gamma basis of darga `m`; `gamma[j]`
/// multiplies `q^j (1+q)^(m-2j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniGammaExpansion {
    pub darga: usize,
    pub gamma: Vec<Coeff>,
}

impl UniGammaExpansion {
    pub fn is_gamma_positive(&self) -> bool {
        self.gamma.iter().all(|&c| c >= 0)
    }

    pub fn reconstruct(&self) -> UniPoly {
        self.gamma.iter().enumerate().fold(UniPoly::zero(), |acc, (j, &c)| {
            &acc + &(&UniPoly::gamma_basis(j, self.darga - 2 * j) * &UniPoly::new(vec![c]))
        })
    }
}

pub fn is_palindromic_univariate(f: &UniPoly, m: usize) -> bool {
    f.degree().is_none_or(|d| d <= m && (0..=m).all(|k| f.coeff(k) == f.coeff(m - k)))
}

/// Greedy peel from the lowest power upward.
pub fn gamma_expand_univariate(f: &UniPoly, m: usize) -> Result<UniGammaExpansion> {
    if !is_palindromic_univariate(f, m) {
        return Err(Error::Expansion(format!("{f} is not palindromic of darga {m}")));
    }
    let mut rest = f.clone();
    let mut gamma = Vec::with_capacity(m / 2 + 1);
    for j in 0..=m / 2 {
        let c = rest.coeff(j);
        gamma.push(c);
        if c != 0 {
            rest = &rest - &(&UniPoly::gamma_basis(j, m - 2 * j) * &UniPoly::new(vec![c]));
        }
    }
    if !rest.is_zero() {
        return Err(Error::Expansion(format!("remainder {rest} after peeling darga {m}")));
    }
    while gamma.last() == Some(&0) {
        gamma.pop();
    }
    Ok(UniGammaExpansion { darga: m, gamma })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;
    use proptest::prelude::*;

    fn a4() -> BivarPoly {
        "1 + 10*s*t + 10*s^2*t^2 + s^3*t^3 + s*t^2 + s^2*t".parse().unwrap()
    }

    /// Dense exact solve of `sum gamma_{ij} basis_{ij} = P` over the rationals,
    /// independent of the elementary-symmetric peel.
    fn dense_solve(poly: &BivarPoly, m: usize) -> Option<BTreeMap<(usize, usize), Coeff>> {
        let idx: Vec<(usize, usize)> =
            (0..=m / 2).flat_map(|i| (0..=m - 2 * i).map(move |j| (i, j))).collect();
        let cols = idx.len();
        let rows_n = (m + 1) * (m + 1);
        let mut a: Vec<Vec<Ratio<i128>>> = vec![vec![Ratio::from_integer(0); cols + 1]; rows_n];
        for (k, &(i, j)) in idx.iter().enumerate() {
            let b = bivariate_basis_element(m, i, j);
            for (p, q, c) in b.terms() {
                a[p * (m + 1) + q][k] = Ratio::from_integer(c);
            }
        }
        for (p, q, c) in poly.terms() {
            if p > m || q > m {
                return None;
            }
            a[p * (m + 1) + q][cols] = Ratio::from_integer(c);
        }
        // Gauss-Jordan
        let mut row = 0;
        let mut pivots = Vec::new();
        for col in 0..cols {
            let Some(piv) = (row..rows_n).find(|&r| a[r][col] != Ratio::from_integer(0)) else {
                continue;
            };
            a.swap(row, piv);
            let inv = Ratio::from_integer(1) / a[row][col];
            for x in a[row].iter_mut() {
                *x *= inv;
            }
            for r in 0..rows_n {
                if r != row && a[r][col] != Ratio::from_integer(0) {
                    let f = a[r][col];
                    for c2 in 0..=cols {
                        let v = a[row][c2];
                        a[r][c2] -= f * v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        assert_eq!(pivots.len(), cols, "basis must be independent");
        if a[row..].iter().any(|r| r[cols] != Ratio::from_integer(0)) {
            return None;
        }
        let mut out = BTreeMap::new();
        for (r, &col) in pivots.iter().enumerate() {
            let v = a[r][cols];
            assert!(v.is_integer());
            if v.to_integer() != 0 {
                out.insert(idx[col], v.to_integer());
            }
        }
        Some(out)
    }

    #[test]
    fn palindromic_checks() {
        assert!(is_palindromic_bivariate(&a4(), 3));
        let s_plus_t: BivarPoly = "s + t".parse().unwrap();
        assert!(is_palindromic_bivariate(&s_plus_t, 1));
        assert!(!is_palindromic_bivariate(&s_plus_t, 2));
        assert!(!is_palindromic_bivariate(&BivarPoly::monomial(1, 2, 1), 3));
        assert!(is_palindromic_bivariate(&BivarPoly::zero(), 5));
        let e = check_palindromic_bivariate(&BivarPoly::monomial(1, 2, 1), 3).unwrap_err();
        assert!(e.to_string().contains("symmetry"), "{e}");
    }

    #[test]
    fn expand_known_polynomials() {
        let g = gamma_expand_bivariate(&a4(), 3).unwrap();
        assert_eq!(g.iter().collect::<Vec<_>>(), vec![((0, 0), 1), ((1, 0), 7), ((1, 1), 1)]);
        assert!(g.is_gamma_positive());
        assert_eq!(g.reconstruct(), a4());

        let simp6: BivarPoly = (&(&bivariate_basis_element(5, 1, 2) + &bivariate_basis_element(5, 2, 0).scale(5))
            + &bivariate_basis_element(5, 2, 1).scale(14))
            .clone();
        let g6 = gamma_expand_bivariate(&simp6, 5).unwrap();
        assert_eq!(g6.iter().collect::<Vec<_>>(), vec![((1, 2), 1), ((2, 0), 5), ((2, 1), 14)]);
        assert_eq!(dense_solve(&simp6, 5).unwrap(), g6.gamma);
    }

    #[test]
    fn basis_elements_expand_to_unit_vectors() {
        for m in 0..=8 {
            for i in 0..=m / 2 {
                for j in 0..=m - 2 * i {
                    let g = gamma_expand_bivariate(&bivariate_basis_element(m, i, j), m).unwrap();
                    assert_eq!(g.iter().collect::<Vec<_>>(), vec![((i, j), 1)]);
                }
            }
        }
    }

    #[test]
    fn negative_coefficients_are_not_positive() {
        let g = BivarGammaExpansion::new(2, [((1, 0), 1), ((0, 2), -1)]).unwrap();
        assert!(!g.is_gamma_positive());
        let p = g.reconstruct();
        assert_eq!(gamma_expand_bivariate(&p, 2).unwrap(), g);
        assert!(BivarGammaExpansion::new(2, [((1, 1), 1)]).is_err());
    }

    #[test]
    fn rejects_non_palindromic() {
        let err = gamma_expand_bivariate(&BivarPoly::monomial(1, 1, 0), 1).unwrap_err();
        assert!(matches!(err, Error::Expansion(_)));
        let err = gamma_expand_bivariate(&"1 + s*t".parse().unwrap(), 3).unwrap_err();
        assert!(err.to_string().contains("reciprocity"), "{err}");
    }

    #[test]
    fn univariate_examples() {
        let g = gamma_expand_univariate(&UniPoly::new(vec![1, 1]), 1).unwrap();
        assert_eq!(g.gamma, vec![1]);
        let g = gamma_expand_univariate(&UniPoly::new(vec![1, 11, 11, 1]), 3).unwrap();
        assert_eq!(g.gamma, vec![1, 8]);
        assert_eq!(g.reconstruct(), UniPoly::new(vec![1, 11, 11, 1]));
        assert!(gamma_expand_univariate(&UniPoly::new(vec![1, 2]), 1).is_err());
        assert!(gamma_expand_univariate(&UniPoly::new(vec![0, 1]), 1).is_err());
        let zero = gamma_expand_univariate(&UniPoly::zero(), 4).unwrap();
        assert!(zero.gamma.is_empty() && zero.is_gamma_positive());
    }

    #[test]
    fn json_form() {
        let g = BivarGammaExpansion::new(3, [((0, 0), 1), ((1, 0), 7), ((1, 1), 1)]).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(
            json,
            r#"{"darga":3,"gamma":[{"i":0,"j":0,"c":1},{"i":1,"j":0,"c":7},{"i":1,"j":1,"c":1}]}"#
        );
        assert_eq!(serde_json::from_str::<BivarGammaExpansion>(&json).unwrap(), g);
    }

    fn arb_expansion(max_m: usize) -> impl Strategy<Value = BivarGammaExpansion> {
        (0..=max_m).prop_flat_map(|m| {
            let n = (0..=m / 2).map(|i| m - 2 * i + 1).sum::<usize>();
            proptest::collection::vec(-50i128..50, n).prop_map(move |cs| {
                let idx = (0..=m / 2).flat_map(|i| (0..=m - 2 * i).map(move |j| (i, j)));
                BivarGammaExpansion::new(m, idx.zip(cs)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn expansion_round_trip(g in arb_expansion(12)) {
            let p = g.reconstruct();
            prop_assert!(is_palindromic_bivariate(&p, g.darga()));
            prop_assert_eq!(gamma_expand_bivariate(&p, g.darga()).unwrap(), g);
        }

        #[test]
        fn agrees_with_dense_solve(g in arb_expansion(8)) {
            let p = g.reconstruct();
            let dense = dense_solve(&p, g.darga()).unwrap();
            prop_assert_eq!(gamma_expand_bivariate(&p, g.darga()).unwrap().gamma, dense);
        }

        #[test]
        fn dense_solve_and_peel_agree_on_rejection(
            terms in proptest::collection::vec((0usize..5, 0usize..5, -3i128..4), 0..6),
            m in 0usize..6,
        ) {
            let p = BivarPoly::from_terms(terms);
            prop_assert_eq!(dense_solve(&p, m).is_some(), gamma_expand_bivariate(&p, m).is_ok());
        }
    }
}
