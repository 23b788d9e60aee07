//! Robinson–Schensted correspondence and the tableau route to `A_n(s,t)`.
//!
//! Under RSK, `Des(pi)` is the descent set of the recording tableau and
//! `Des(pi^-1)` that of the insertion tableau, so
//! `A_n(s,t) = sum_lambda D_lambda(s) D_lambda(t)` where `D_lambda(q)`
//! counts standard Young tableaux of shape `lambda` by descents. `D_lambda`
//! is computed by a dynamic program over (shape, row of the largest entry),
//! without listing tableaux.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::{BivarPoly, UniPoly};

/// Largest `n` accepted by [`rsk_two_sided_eulerian`].
pub const MAX_RSK_N: usize = 14;

/// Rows of a tableau, top to bottom.
pub type Tableau = Vec<Vec<u32>>;

/// Row-insertion RSK: returns `(P, Q)`.
pub fn rsk(p: &Permutation) -> (Tableau, Tableau) {
    let mut ptab: Tableau = Vec::new();
    let mut qtab: Tableau = Vec::new();
    for (idx, &x) in p.values().iter().enumerate() {
        let mut bump = x;
        let mut row = 0;
        loop {
            if row == ptab.len() {
                ptab.push(vec![bump]);
                qtab.push(vec![idx as u32 + 1]);
                break;
            }
            let r = &mut ptab[row];
            match r.iter().position(|&y| y > bump) {
                Some(k) => {
                    std::mem::swap(&mut r[k], &mut bump);
                    row += 1;
                }
                None => {
                    r.push(bump);
                    qtab[row].push(idx as u32 + 1);
                    break;
                }
            }
        }
    }
    (ptab, qtab)
}

/// Entries `i` with `i + 1` in a strictly lower row.
pub fn tableau_descents(t: &Tableau) -> Vec<usize> {
    let n: usize = t.iter().map(Vec::len).sum();
    let mut row_of = vec![0; n + 1];
    for (r, row) in t.iter().enumerate() {
        for &x in row {
            row_of[x as usize] = r;
        }
    }
    (1..n).filter(|&i| row_of[i + 1] > row_of[i]).collect()
}

/// `D_lambda(q)` for every partition `lambda` of `n`, keyed by the shape.
pub fn syt_descent_polynomials(n: usize) -> BTreeMap<Vec<usize>, UniPoly> {
    // (shape, row holding the largest entry) -> counts by descent number
    let mut level: BTreeMap<(Vec<usize>, usize), Vec<u64>> = BTreeMap::new();
    if n == 0 {
        return BTreeMap::from([(Vec::new(), UniPoly::monomial(1, 0))]);
    }
    level.insert((vec![1], 0), vec![1]);
    for _ in 1..n {
        let mut next: BTreeMap<(Vec<usize>, usize), Vec<u64>> = BTreeMap::new();
        for ((shape, last), counts) in &level {
            for r in 0..=shape.len() {
                let addable = if r == shape.len() { true } else { r == 0 || shape[r - 1] > shape[r] };
                if !addable {
                    continue;
                }
                let mut grown = shape.clone();
                if r == shape.len() {
                    grown.push(1);
                } else {
                    grown[r] += 1;
                }
                let shift = usize::from(r > *last);
                let slot = next.entry((grown, r)).or_default();
                if slot.len() < counts.len() + shift {
                    slot.resize(counts.len() + shift, 0);
                }
                for (k, &c) in counts.iter().enumerate() {
                    slot[k + shift] += c;
                }
            }
        }
        level = next;
    }
    let mut out: BTreeMap<Vec<usize>, Vec<u64>> = BTreeMap::new();
    for ((shape, _), counts) in level {
        let slot = out.entry(shape).or_default();
        if slot.len() < counts.len() {
            slot.resize(counts.len(), 0);
        }
        for (k, c) in counts.into_iter().enumerate() {
            slot[k] += c;
        }
    }
    out.into_iter()
        .map(|(shape, counts)| (shape, UniPoly::new(counts.into_iter().map(i128::from).collect())))
        .collect()
}

/// `A_n(s,t)` from tableau descent polynomials.
pub fn rsk_two_sided_eulerian(n: usize) -> Result<BivarPoly> {
    if n == 0 {
        return Err(Error::Input("n must be at least 1".into()));
    }
    if n > MAX_RSK_N {
        return Err(Error::Resource { what: "tableau route for A_n", n, bound: MAX_RSK_N, hint: None });
    }
    let mut out = BivarPoly::zero();
    for d in syt_descent_polynomials(n).values() {
        let c = d.coeffs();
        for (p, &a) in c.iter().enumerate() {
            for (q, &b) in c.iter().enumerate() {
                out.add_monomial(a * b, p, q);
            }
        }
    }
    Ok(out)
}
