//! Two-sided Eulerian statistics over permutation classes.
//!
//! The crate computes joint `(des, ides)` distributions over `S_n` and its
//! subclasses, substitution decomposition trees, expansions in the bivariate
//! gamma basis, and the generating-function route from all permutations to
//! simple permutations via functional inversion. Most results are available
//! by two independent routes so they can be cross-checked.

pub mod decomp;
pub mod enumerate;
pub mod error;
pub mod hclasses;
pub mod perm;
pub mod poly;
pub mod rsk;
pub mod series;

pub use decomp::{decompose, in_h, BrcPartition, DecompTree, SimplifiedTree};
pub use enumerate::{
    enumerate_permutations, enumerate_simple, joint_distribution, JointDistribution,
    MAX_ENUMERATION_N,
};
pub use error::{Error, Result};
pub use perm::Permutation;
pub use poly::{BivarGammaExpansion, BivarPoly, Coeff, UniGammaExpansion, UniPoly};
pub use series::PowerSeries;
