//! Exact integer polynomials, palindromicity and gamma-basis expansion.

mod bivariate;
mod gamma;
mod univariate;

pub use bivariate::BivarPoly;
pub use gamma::{
    bivariate_basis_element, check_palindromic_bivariate, gamma_expand_bivariate,
    gamma_expand_univariate, is_palindromic_bivariate, is_palindromic_univariate,
    BivarGammaExpansion, UniGammaExpansion,
};
pub use univariate::UniPoly;

/// Coefficient ring. Every operation is checked; overflow panics rather
/// than wrapping.
pub type Coeff = i128;

#[inline]
pub(crate) fn checked_add(a: Coeff, b: Coeff) -> Coeff {
    a.checked_add(b).expect("polynomial coefficient overflow")
}

#[inline]
pub(crate) fn checked_mul(a: Coeff, b: Coeff) -> Coeff {
    a.checked_mul(b).expect("polynomial coefficient overflow")
}

pub(crate) fn binomial(n: usize, k: usize) -> Coeff {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc: Coeff, r| checked_mul(acc, (n - r) as Coeff) / (r + 1) as Coeff)
}
