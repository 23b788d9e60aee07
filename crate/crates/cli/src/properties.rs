//! Seeded randomized checks.

use gammalab_core::poly::{bivariate_basis_element, gamma_expand_bivariate};
use gammalab_core::{BivarPoly, Permutation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const INFLATION_TRIALS: usize = 10_000;
pub const ROUND_TRIP_TRIALS: usize = 1_000;

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut v: Vec<u32> = (1..=n as u32).collect();
    v.shuffle(rng);
    Permutation::new(v).expect("shuffled identity")
}

/// des and ides are additive under inflation. Returns the first failure.
pub fn inflation_additivity(seed: u64, trials: usize) -> Option<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let k = rng.gen_range(1..=7);
        let skeleton = random_perm(&mut rng, k);
        let parts: Vec<Permutation> = (0..k)
            .map(|_| {
                let m = rng.gen_range(1..=5);
                random_perm(&mut rng, m)
            })
            .collect();
        let sigma = skeleton.inflate(&parts).expect("arity matches");
        let des = skeleton.des() + parts.iter().map(Permutation::des).sum::<usize>();
        let ides = skeleton.ides() + parts.iter().map(Permutation::ides).sum::<usize>();
        if sigma.des() != des || sigma.ides() != ides {
            return Some(format!("{skeleton} inflated by {parts:?}"));
        }
    }
    None
}

/// Random palindromic polynomials built from gamma coefficients expand back
/// to the same coefficients.
pub fn gamma_round_trip(seed: u64, trials: usize) -> Option<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let m = rng.gen_range(0..=12);
        let mut p = BivarPoly::zero();
        let mut expected = Vec::new();
        for i in 0..=m / 2 {
            for j in 0..=m - 2 * i {
                let c: i128 = rng.gen_range(-1000..=1000);
                if c != 0 && rng.gen_bool(0.4) {
                    p += &bivariate_basis_element(m, i, j).scale(c);
                    expected.push(((i, j), c));
                }
            }
        }
        match gamma_expand_bivariate(&p, m) {
            Ok(g) if g.iter().collect::<Vec<_>>() == expected && g.reconstruct() == p => {}
            Ok(_) => return Some(format!("darga {m}: expansion of {p} differs")),
            Err(e) => return Some(format!("darga {m}: {e}")),
        }
    }
    None
}
