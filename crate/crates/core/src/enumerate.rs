//! Exhaustive enumeration of `S_n` and joint `(des, ides)` distributions.
//!
//! Permutations are visited in lexicographic order. Parallel runs split the
//! rank range `0..n!` into contiguous shards, start each shard by unranking
//! and step with the lexicographic successor. Partial distributions are
//! integer grids merged by addition, so the parallel result is identical to
//! the sequential one.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{des, ides, Permutation};
use crate::poly::{BivarPoly, Coeff};

/// Hard cap on `n` for full enumeration of `S_n` (12! ~ 4.8e8).
pub const MAX_ENUMERATION_N: usize = 12;

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn check_enumeration_bound(n: usize, bound: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Input("n must be at least 1".into()));
    }
    let bound = bound.min(MAX_ENUMERATION_N);
    if n > bound {
        return Err(Error::Resource { what: "enumeration of S_n", n, bound, hint: None });
    }
    Ok(())
}

impl Permutation {
    /// Advances to the lexicographic successor in place; returns false (and
    /// leaves `self` unchanged) at the last permutation.
    pub fn next_lex(&mut self) -> bool {
        let v = self.values_mut();
        let n = v.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && v[i - 1] > v[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while v[j] < v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }

    /// The permutation of rank `rank` (0-based) in lexicographic order of `S_n`.
    pub fn from_lex_rank(n: usize, mut rank: u64) -> Result<Permutation> {
        if n == 0 || n > 20 {
            return Err(Error::Input(format!("cannot unrank in S_{n}")));
        }
        if rank >= factorial(n) {
            return Err(Error::Input(format!("rank {rank} out of range for S_{n}")));
        }
        let mut pool: Vec<u32> = (1..=n as u32).collect();
        let mut values = Vec::with_capacity(n);
        for k in (0..n).rev() {
            let f = factorial(k);
            let idx = (rank / f) as usize;
            rank %= f;
            values.push(pool.remove(idx));
        }
        Ok(Permutation::from_vec_unchecked(values))
    }

    /// Lexicographic rank within `S_n`; requires `n <= 20`.
    pub fn lex_rank(&self) -> u64 {
        let v = self.values();
        let n = v.len();
        let mut rank = 0;
        for i in 0..n {
            let smaller_after = v[i + 1..].iter().filter(|&&x| x < v[i]).count() as u64;
            rank += smaller_after * factorial(n - 1 - i);
        }
        rank
    }
}

/// Iterator over `S_n` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Permutations {
    next: Option<Permutation>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if succ.next_lex() {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// Every element of `S_n` exactly once, lexicographically.
pub fn enumerate_permutations(n: usize) -> Result<Permutations> {
    check_enumeration_bound(n, MAX_ENUMERATION_N)?;
    Ok(Permutations { next: Some(Permutation::identity(n)) })
}

/// Every simple permutation of length `n`, lexicographically.
pub fn enumerate_simple(n: usize) -> Result<impl Iterator<Item = Permutation>> {
    Ok(enumerate_permutations(n)?.filter(Permutation::is_simple))
}

/// Sequential visit of `S_n` without per-element allocation.
pub fn for_each_permutation<F: FnMut(&Permutation)>(n: usize, mut f: F) -> Result<()> {
    check_enumeration_bound(n, MAX_ENUMERATION_N)?;
    let mut p = Permutation::identity(n);
    loop {
        f(&p);
        if !p.next_lex() {
            return Ok(());
        }
    }
}

fn shard_ranges(total: u64) -> Vec<(u64, u64)> {
    let shards = (rayon::current_num_threads() as u64 * 16).clamp(1, total.max(1));
    let step = total.div_ceil(shards);
    (0..shards)
        .map(|k| (k * step, ((k + 1) * step).min(total)))
        .filter(|(a, b)| a < b)
        .collect()
}

/// Parallel fold over `S_n`: each rank shard folds from `identity()`, and
/// shard results are combined with `reduce`. `reduce` must be associative
/// and commutative for the result to be schedule-independent.
pub fn par_fold<T, ID, F, R>(n: usize, identity: ID, fold: F, reduce: R) -> Result<T>
where
    T: Send,
    ID: Fn() -> T + Sync + Send,
    F: Fn(T, &Permutation) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    check_enumeration_bound(n, MAX_ENUMERATION_N)?;
    let ranges = shard_ranges(factorial(n));
    Ok(ranges
        .into_par_iter()
        .map(|(start, end)| {
            let mut p = Permutation::from_lex_rank(n, start).expect("rank in range");
            let mut acc = identity();
            for r in start..end {
                acc = fold(acc, &p);
                if r + 1 < end {
                    p.next_lex();
                }
            }
            acc
        })
        .reduce(&identity, &reduce))
}

/// `sum s^des t^ides` over a set of permutations of a common length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointDistribution {
    n: usize,
    count: u64,
    poly: BivarPoly,
}

impl JointDistribution {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn poly(&self) -> &BivarPoly {
        &self.poly
    }

    pub fn into_poly(self) -> BivarPoly {
        self.poly
    }
}

/// Dense `(des, ides)` histogram used as the fold accumulator.
#[derive(Debug, Clone)]
pub struct DesIdesCounter {
    n: usize,
    count: u64,
    grid: Vec<u64>,
}

impl DesIdesCounter {
    pub fn new(n: usize) -> Self {
        DesIdesCounter { n, count: 0, grid: vec![0; n * n] }
    }

    #[inline]
    pub fn add(&mut self, p: &Permutation) {
        let v = p.values();
        self.grid[des(v) * self.n + ides(v)] += 1;
        self.count += 1;
    }

    pub fn merge(mut self, other: DesIdesCounter) -> Self {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.grid.iter_mut().zip(other.grid) {
            *a += b;
        }
        self.count += other.count;
        self
    }

    pub fn finish(self) -> JointDistribution {
        let poly = BivarPoly::from_grid(
            self.n,
            self.n,
            self.grid.into_iter().map(|c| c as Coeff).collect(),
        );
        JointDistribution { n: self.n, count: self.count, poly }
    }
}

/// Joint distribution of an explicit collection; every element must have length `n`.
pub fn joint_distribution<'a, I>(n: usize, perms: I) -> Result<JointDistribution>
where
    I: IntoIterator<Item = &'a Permutation>,
{
    if n == 0 {
        return Err(Error::Input("n must be at least 1".into()));
    }
    let mut counter = DesIdesCounter::new(n);
    for p in perms {
        if p.len() != n {
            return Err(Error::Input(format!(
                "mixed lengths: expected {n}, found permutation {p} of length {}",
                p.len()
            )));
        }
        counter.add(p);
    }
    Ok(counter.finish())
}

/// Joint distribution over `{ p in S_n : keep(p) }`, computed in parallel.
pub fn joint_distribution_where<P>(n: usize, keep: P) -> Result<JointDistribution>
where
    P: Fn(&Permutation) -> bool + Sync + Send,
{
    par_fold(
        n,
        || DesIdesCounter::new(n),
        |mut acc, p| {
            if keep(p) {
                acc.add(p);
            }
            acc
        },
        DesIdesCounter::merge,
    )
    .map(DesIdesCounter::finish)
}

/// The two-sided Eulerian polynomial by enumeration of `S_n`.
pub fn eulerian_by_enumeration(n: usize) -> Result<JointDistribution> {
    joint_distribution_where(n, |_| true)
}

/// `simp_n(s,t)` by filtering `S_n` for simple permutations.
pub fn simple_by_enumeration(n: usize) -> Result<JointDistribution> {
    joint_distribution_where(n, Permutation::is_simple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_is_complete_and_ordered() {
        for n in 1..=6 {
            let all: Vec<_> = enumerate_permutations(n).unwrap().collect();
            assert_eq!(all.len() as u64, factorial(n));
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            let set: HashSet<_> = all.iter().collect();
            assert_eq!(set.len(), all.len());
            for (r, q) in all.iter().enumerate() {
                assert_eq!(q.lex_rank(), r as u64);
                assert_eq!(&Permutation::from_lex_rank(n, r as u64).unwrap(), q);
            }
        }
    }

    #[test]
    fn bounds() {
        assert!(matches!(enumerate_permutations(13), Err(Error::Resource { .. })));
        assert!(matches!(enumerate_permutations(0), Err(Error::Input(_))));
        assert!(check_enumeration_bound(11, 10).is_err());
        assert!(Permutation::from_lex_rank(3, 6).is_err());
    }

    #[test]
    fn simple_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_simple(n).unwrap().count()).collect();
        assert_eq!(counts, vec![1, 2, 0, 2, 6, 46]);
    }

    #[test]
    fn joint_distribution_examples() {
        let a4 = eulerian_by_enumeration(4).unwrap();
        assert_eq!(a4.poly().to_string(), "1 + 10*s*t + s*t^2 + s^2*t + 10*s^2*t^2 + s^3*t^3");
        assert_eq!(a4.count(), 24);
        assert_eq!(simple_by_enumeration(4).unwrap().poly().to_string(), "s*t^2 + s^2*t");
        assert_eq!(simple_by_enumeration(5).unwrap().poly().to_string(), "6*s^2*t^2");
        assert!(simple_by_enumeration(3).unwrap().poly().is_zero());
    }

    #[test]
    fn explicit_collection() {
        let set = [p("2413"), p("3142")];
        let d = joint_distribution(4, &set).unwrap();
        assert_eq!(d.poly().to_string(), "s*t^2 + s^2*t");
        assert_eq!(d.poly().eval_one(), d.count() as i128);
        let mixed = [p("12"), p("123")];
        assert!(matches!(joint_distribution(2, &mixed), Err(Error::Input(_))));
    }

    #[test]
    fn parallel_equals_sequential() {
        for n in 1..=8 {
            let mut seq = DesIdesCounter::new(n);
            for_each_permutation(n, |p| seq.add(p)).unwrap();
            assert_eq!(seq.finish(), eulerian_by_enumeration(n).unwrap());
        }
    }

    #[test]
    fn eulerian_is_bivariate_palindromic() {
        for n in 1..=9 {
            let a = eulerian_by_enumeration(n).unwrap();
            assert!(crate::poly::is_palindromic_bivariate(a.poly(), n - 1), "n = {n}");
            assert_eq!(a.poly().eval_one() as u64, factorial(n));
            assert!(a.poly().is_nonnegative());
        }
    }
}
