//! Permutations in one-line notation and the statistics built on them.
//!
//! Positions and values are 1-based in the public API. Hot loops work on
//! plain `&[u32]` slices so enumeration can avoid allocating a
//! [`Permutation`] per element; the slice helpers assume the slice already
//! holds a bijection of `1..=n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `1..=n`, `n >= 1`, stored in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Validates that `values` is a bijection of `1..=n`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Input("permutation must have length at least 1".into()));
        }
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for (i, &v) in values.iter().enumerate() {
            let v = v as usize;
            if v == 0 || v > n {
                return Err(Error::Input(format!(
                    "value {v} at position {} is outside 1..={n}",
                    i + 1
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Input(format!("value {v} repeated at position {}", i + 1)));
            }
        }
        Ok(Permutation { values })
    }

    /// Caller guarantees `values` is a bijection of `1..=n`.
    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "identity of length 0");
        Permutation { values: (1..=n as u32).collect() }
    }

    /// The order-isomorphic standardization of a sequence of distinct integers.
    pub fn standardize(seq: &[u32]) -> Self {
        Permutation::from_vec_unchecked(standardized(seq))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; kept for the `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [u32] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.values[i - 1]
    }

    /// Positions `i` in `1..n` with `p(i) > p(i+1)`.
    pub fn descent_set(&self) -> Vec<usize> {
        self.values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn des(&self) -> usize {
        des(&self.values)
    }

    pub fn ides(&self) -> usize {
        ides(&self.values)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { values: inv }
    }

    /// The value-flip `i -> n + 1 - p(i)`.
    pub fn complement(&self) -> Permutation {
        let n = self.len() as u32;
        Permutation { values: self.values.iter().map(|&v| n + 1 - v).collect() }
    }

    /// Whether positions `i..=j` (1-based) hold a contiguous range of values.
    pub fn is_block(&self, i: usize, j: usize) -> Result<bool> {
        if i == 0 || i > j || j > self.len() {
            return Err(Error::Range { start: i, end: j, len: self.len() });
        }
        let seg = &self.values[i - 1..j];
        let (lo, hi) = min_max(seg);
        Ok((hi - lo) as usize == j - i)
    }

    pub fn is_simple(&self) -> bool {
        is_simple(&self.values)
    }

    pub fn is_sum_indecomposable(&self) -> bool {
        last_sum_split(&self.values).is_none()
    }

    pub fn is_skew_indecomposable(&self) -> bool {
        last_skew_split(&self.values).is_none()
    }

    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let m = self.len() as u32;
        let values = self
            .values
            .iter()
            .copied()
            .chain(other.values.iter().map(|&v| v + m))
            .collect();
        Permutation { values }
    }

    pub fn skew_sum(&self, other: &Permutation) -> Permutation {
        let n = other.len() as u32;
        let values = self
            .values
            .iter()
            .map(|&v| v + n)
            .chain(other.values.iter().copied())
            .collect();
        Permutation { values }
    }

    /// Inflation `self[parts[0], ..., parts[k-1]]`: entry `i` of the skeleton
    /// becomes a block order-isomorphic to `parts[i]`.
    pub fn inflate(&self, parts: &[Permutation]) -> Result<Permutation> {
        if parts.len() != self.len() {
            return Err(Error::Arity { expected: self.len(), got: parts.len() });
        }
        let k = self.len();
        // offset of the block carrying skeleton value v = total size of blocks with smaller values
        let mut size_by_value = vec![0u32; k + 1];
        for (i, &v) in self.values.iter().enumerate() {
            size_by_value[v as usize] = parts[i].len() as u32;
        }
        let mut offset_by_value = vec![0u32; k + 1];
        for v in 2..=k {
            offset_by_value[v] = offset_by_value[v - 1] + size_by_value[v - 1];
        }
        let total: usize = parts.iter().map(Permutation::len).sum();
        let mut values = Vec::with_capacity(total);
        for (i, &v) in self.values.iter().enumerate() {
            let off = offset_by_value[v as usize];
            values.extend(parts[i].values.iter().map(|&x| x + off));
        }
        Ok(Permutation { values })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<u32>) -> Result<Self> {
        Permutation::new(values)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.values
    }
}

/// Accepts `"4 5 2 3"`, `"4,5,2,3"`, or for `n <= 9` the compact `"4523"`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let is_sep = |c: char| c == ',' || c.is_whitespace();
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::Parse { position: 1, message: "empty permutation".into() });
        }
        let lead = text.len() - text.trim_start().len();
        let mut values = Vec::new();
        let mut positions = Vec::new();

        if !trimmed.contains(is_sep) && trimmed.chars().count() > 1 {
            if trimmed.chars().count() > 9 {
                return Err(Error::Parse {
                    position: lead + 10,
                    message: "compact digit form is limited to n <= 9; separate values with spaces"
                        .into(),
                });
            }
            for (i, c) in trimmed.char_indices() {
                let d = c.to_digit(10).ok_or_else(|| Error::Parse {
                    position: lead + i + 1,
                    message: format!("unexpected character {c:?}"),
                })?;
                values.push(d);
                positions.push(lead + i + 1);
            }
        } else {
            let mut start = None;
            for (i, c) in text.char_indices().chain(std::iter::once((text.len(), ' '))) {
                if is_sep(c) {
                    if let Some(s) = start.take() {
                        let tok = &text[s..i];
                        let v: u32 = tok.parse().map_err(|_| Error::Parse {
                            position: s + 1,
                            message: format!("invalid value {tok:?}"),
                        })?;
                        values.push(v);
                        positions.push(s + 1);
                    }
                } else if start.is_none() {
                    start = Some(i);
                }
            }
        }

        let n = values.len();
        let mut seen = vec![false; n + 1];
        for (&v, &pos) in values.iter().zip(&positions) {
            let vi = v as usize;
            if vi == 0 || vi > n {
                return Err(Error::Parse {
                    position: pos,
                    message: format!("value {v} outside 1..={n}"),
                });
            }
            if std::mem::replace(&mut seen[vi], true) {
                return Err(Error::Parse { position: pos, message: format!("value {v} repeated") });
            }
        }
        Ok(Permutation { values })
    }
}

pub(crate) fn min_max(seg: &[u32]) -> (u32, u32) {
    seg.iter().fold((u32::MAX, 0), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

pub(crate) fn standardized(seq: &[u32]) -> Vec<u32> {
    let mut idx: Vec<usize> = (0..seq.len()).collect();
    idx.sort_unstable_by_key(|&i| seq[i]);
    let mut out = vec![0u32; seq.len()];
    for (rank, &i) in idx.iter().enumerate() {
        out[i] = rank as u32 + 1;
    }
    out
}

/// Number of descents of a one-line sequence.
pub fn des(values: &[u32]) -> usize {
    values.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Number of descents of the inverse: values `v` with `v + 1` placed to the left of `v`.
pub fn ides(values: &[u32]) -> usize {
    let n = values.len();
    let mut stack = [0u32; 32];
    let mut heap;
    let pos: &mut [u32] = if n < 32 {
        &mut stack[..=n]
    } else {
        heap = vec![0u32; n + 1];
        &mut heap
    };
    for (i, &v) in values.iter().enumerate() {
        pos[v as usize] = i as u32;
    }
    (1..n).filter(|&v| pos[v + 1] < pos[v]).count()
}

/// True iff no segment of length strictly between 1 and n is a block.
pub fn is_simple(values: &[u32]) -> bool {
    let n = values.len();
    if n <= 2 {
        return true;
    }
    for i in 0..n - 1 {
        let (mut lo, mut hi) = (values[i], values[i]);
        // segments i..=j with 2 <= len <= n-1
        let last = if i == 0 { n - 2 } else { n - 1 };
        for j in i + 1..=last {
            lo = lo.min(values[j]);
            hi = hi.max(values[j]);
            if (hi - lo) as usize == j - i {
                return false;
            }
        }
    }
    true
}

/// Largest `i < n` such that the first `i` entries are exactly `{1..i}`.
pub(crate) fn last_sum_split(values: &[u32]) -> Option<usize> {
    let n = values.len();
    let mut hi = 0;
    let mut last = None;
    for (i, &v) in values[..n.saturating_sub(1)].iter().enumerate() {
        hi = hi.max(v);
        if hi as usize == i + 1 {
            last = Some(i + 1);
        }
    }
    last
}

/// Largest `i < n` such that the first `i` entries are exactly the top `i` values.
pub(crate) fn last_skew_split(values: &[u32]) -> Option<usize> {
    let n = values.len();
    let mut lo = u32::MAX;
    let mut last = None;
    for (i, &v) in values[..n.saturating_sub(1)].iter().enumerate() {
        lo = lo.min(v);
        if lo as usize == n - i {
            last = Some(i + 1);
        }
    }
    last
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn descent_examples() {
        let pi = p("246135");
        assert_eq!(pi.descent_set(), vec![3]);
        assert_eq!((pi.des(), pi.ides()), (1, 3));
        assert_eq!(pi.inverse().descent_set(), vec![1, 3, 5]);
        assert!(Permutation::identity(7).descent_set().is_empty());
        assert_eq!(p("321").descent_set(), vec![1, 2]);
        assert_eq!((p("2413").des(), p("2413").ides()), (1, 2));
        assert_eq!((p("3142").des(), p("3142").ides()), (2, 1));
    }

    #[test]
    fn inverse_and_complement() {
        assert_eq!(p("2413").inverse(), p("3142"));
        assert_eq!(Permutation::identity(5).inverse(), Permutation::identity(5));
        assert_eq!(p("2413").complement(), p("3142"));
        assert_eq!(Permutation::identity(4).complement(), p("4321"));
        let c = p("24153").complement();
        assert_eq!(c, p("42513"));
        assert!(c.is_simple() && p("24153").is_simple());
    }

    #[test]
    fn blocks() {
        let pi = p("2647513");
        assert!(pi.is_block(2, 5).unwrap());
        assert!(!pi.is_block(2, 6).unwrap());
        assert!(pi.is_block(1, 7).unwrap());
        assert!(matches!(pi.is_block(0, 3), Err(Error::Range { .. })));
        assert!(matches!(pi.is_block(4, 3), Err(Error::Range { .. })));
        assert!(matches!(pi.is_block(3, 8), Err(Error::Range { .. })));
    }

    #[test]
    fn simplicity() {
        assert!(p("3517246").is_simple());
        for q in ["123", "132", "213", "231", "312", "321"] {
            assert!(!p(q).is_simple(), "{q}");
        }
        assert!(p("1").is_simple() && p("12").is_simple() && p("21").is_simple());
        assert!(p("2413").is_simple() && p("3142").is_simple());
        assert!(!p("2143").is_simple());
    }

    #[test]
    fn sums() {
        assert_eq!(p("132").direct_sum(&p("4231")), p("1327564"));
        assert_eq!(p("132").skew_sum(&p("4231")), p("5764231"));
        assert_eq!(p("1").direct_sum(&p("1")), p("12"));
        assert_eq!(p("1").skew_sum(&p("1")), p("21"));
    }

    #[test]
    fn inflation_examples() {
        let s = p("2413").inflate(&[p("213"), p("21"), p("132"), p("1")]).unwrap();
        assert_eq!(s, p("546981327"));
        let s = p("2413").inflate(&[p("3412"), p("21"), p("1"), p("12")]).unwrap();
        assert_eq!(s, p("452398167"));
        let pi = p("3517246");
        assert_eq!(pi.inflate(&vec![p("1"); 7]).unwrap(), pi);
        assert_eq!(
            p("12").inflate(&[p("1")]),
            Err(Error::Arity { expected: 2, got: 1 })
        );
    }

    #[test]
    fn indecomposability() {
        assert!(!p("123").is_sum_indecomposable());
        assert!(p("123").is_skew_indecomposable());
        assert!(p("21").is_sum_indecomposable());
        assert!(!p("21").is_skew_indecomposable());
        assert!(p("2413").is_sum_indecomposable() && p("2413").is_skew_indecomposable());
        assert!(p("1").is_sum_indecomposable() && p("1").is_skew_indecomposable());
    }

    #[test]
    fn parsing() {
        assert_eq!(p("4 5 2 3 9 8 1 6 7"), p("452398167"));
        assert_eq!(p("3,4, 1 ,2"), p("3412"));
        assert_eq!(p("10 1 2 3 4 5 6 7 8 9").len(), 10);
        assert_eq!(p(" 1 ").len(), 1);
        assert_eq!(p("452398167").to_string(), "4 5 2 3 9 8 1 6 7");
        let err = |s: &str| s.parse::<Permutation>().unwrap_err();
        assert_eq!(err("1 2 x").to_string(), "parse error at position 5: invalid value \"x\"");
        assert!(matches!(err("1 3"), Error::Parse { position: 3, .. }));
        assert!(matches!(err("1 1"), Error::Parse { position: 3, .. }));
        assert!(matches!(err("12a"), Error::Parse { position: 3, .. }));
        assert!(matches!(err(""), Error::Parse { .. }));
        assert!(matches!(err("1234567891"), Error::Parse { .. }));
    }

    #[test]
    fn serde_validates() {
        let q: Permutation = serde_json::from_str("[2,4,1,3]").unwrap();
        assert_eq!(q, p("2413"));
        assert_eq!(serde_json::to_string(&q).unwrap(), "[2,4,1,3]");
        assert!(serde_json::from_str::<Permutation>("[2,2]").is_err());
    }

    #[test]
    fn standardize_pattern() {
        assert_eq!(Permutation::standardize(&[9, 8, 1, 6]), p("4312"));
    }
}
