//! Multi-index combinatorics for the grading of `H = H_1 ⊗ … ⊗ H_k` by
//! index sum.
//!
//! The standard product basis `e_{i_1} ⊗ … ⊗ e_{i_k}` is ordered
//! lexicographically on `(i_1, …, i_k)`, first factor most significant. Every
//! dense coefficient vector in this crate uses that order, and level views
//! reuse it restricted to a single level.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Local dimensions `(d_1, …, d_k)` of a tensor product space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Dims(Vec<usize>);

impl Dims {
    pub fn new(d: Vec<usize>) -> Result<Self> {
        if d.len() < 2 || d.iter().any(|&x| x < 2) {
            return Err(Error::InvalidDims(d));
        }
        Ok(Dims(d))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Number of tensor factors.
    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// `N = Σ (d_r − 1)`, the top level.
    pub fn n_max(&self) -> usize {
        self.0.iter().map(|d| d - 1).sum()
    }

    /// `Π d_r`.
    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    /// Dimension of the completely entangled subspace, `Π d_r − (N + 1)`.
    pub fn entangled_dim(&self) -> usize {
        self.total() - (self.n_max() + 1)
    }

    /// Position of a multi-index in the global lexicographic order.
    pub fn offset(&self, idx: &MultiIndex) -> usize {
        debug_assert_eq!(idx.0.len(), self.k());
        idx.0
            .iter()
            .zip(&self.0)
            .fold(0, |acc, (&i, &d)| acc * d + i)
    }

    /// Inverse of [`Dims::offset`].
    pub fn multi_index(&self, mut pos: usize) -> MultiIndex {
        let mut idx = vec![0; self.k()];
        for (slot, &d) in idx.iter_mut().zip(&self.0).rev() {
            *slot = pos % d;
            pos /= d;
        }
        MultiIndex(idx)
    }

    /// All multi-indices in global order.
    pub fn indices(&self) -> impl Iterator<Item = MultiIndex> + '_ {
        (0..self.total()).map(|p| self.multi_index(p))
    }

    fn check_level(&self, n: i64) -> Result<usize> {
        let max = self.n_max();
        if n < 0 || n as usize > max {
            return Err(Error::LevelOutOfRange { level: n, max });
        }
        Ok(n as usize)
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl TryFrom<Vec<usize>> for Dims {
    type Error = Error;

    fn try_from(d: Vec<usize>) -> Result<Self> {
        Dims::new(d)
    }
}

impl From<Dims> for Vec<usize> {
    fn from(d: Dims) -> Self {
        d.0
    }
}

/// A multi-index `(i_1, …, i_k)` into the standard product basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn level(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Every multi-index of level `n`, in lexicographic order.
pub fn enumerate_level(dims: &Dims, n: i64) -> Result<Vec<MultiIndex>> {
    let n = dims.check_level(n)?;
    let d = dims.as_slice();
    // suffix_max[r] = largest index sum attainable by factors r..k
    let mut suffix_max = vec![0; d.len() + 1];
    for r in (0..d.len()).rev() {
        suffix_max[r] = suffix_max[r + 1] + d[r] - 1;
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d.len());
    fill_level(d, &suffix_max, n, &mut cur, &mut out);
    Ok(out)
}

fn fill_level(
    d: &[usize],
    suffix_max: &[usize],
    remaining: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<MultiIndex>,
) {
    let r = cur.len();
    if r == d.len() {
        if remaining == 0 {
            out.push(MultiIndex(cur.clone()));
        }
        return;
    }
    let hi = remaining.min(d[r] - 1);
    let lo = remaining.saturating_sub(suffix_max[r + 1]);
    for i in lo..=hi {
        cur.push(i);
        fill_level(d, suffix_max, remaining - i, cur, out);
        cur.pop();
    }
}

/// Coefficients of `p(x) = Π_r (1 + x + … + x^{d_r − 1})`, i.e. `a_0, …, a_N`.
pub fn level_counts(dims: &Dims) -> Vec<u64> {
    let mut poly = vec![1u64];
    for &d in dims.as_slice() {
        let mut next = vec![0u64; poly.len() + d - 1];
        for (i, &c) in poly.iter().enumerate() {
            for slot in &mut next[i..i + d] {
                *slot += c;
            }
        }
        poly = next;
    }
    poly
}

/// `a_n`, the dimension of the level-`n` component; zero outside `0..=N`.
pub fn level_count(dims: &Dims, n: i64) -> u64 {
    if n < 0 || n as usize > dims.n_max() {
        return 0;
    }
    level_counts(dims)[n as usize]
}

/// Closed forms for `a_n`: the three-branch formula when `k = 2`, binomial
/// coefficients when every factor is a qubit. `None` when neither applies.
pub fn level_count_closed_form(dims: &Dims, n: i64) -> Option<u64> {
    let d = dims.as_slice();
    if d.len() == 2 {
        let (d1, d2) = (d[0].min(d[1]) as i64, d[0].max(d[1]) as i64);
        let v = if n < 0 || n > d1 + d2 - 2 {
            0
        } else if n <= d1 - 1 {
            n + 1
        } else if n <= d2 - 1 {
            d1
        } else {
            d1 + d2 - (n + 1)
        };
        return Some(v as u64);
    }
    if d.iter().all(|&x| x == 2) {
        let k = d.len() as i64;
        if n < 0 || n > k {
            return Some(0);
        }
        return Some(binomial(k as u64, n as u64));
    }
    None
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(d: &[usize]) -> Dims {
        Dims::new(d.to_vec()).unwrap()
    }

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    #[test]
    fn rejects_degenerate_dims() {
        assert!(Dims::new(vec![1, 3]).is_err());
        assert!(Dims::new(vec![4]).is_err());
        assert!(Dims::new(vec![]).is_err());
    }

    #[test]
    fn enumerate_level_examples() {
        let d = dims(&[2, 3]);
        assert_eq!(enumerate_level(&d, 2).unwrap(), vec![mi(&[0, 2]), mi(&[1, 1])]);
        assert_eq!(enumerate_level(&d, 0).unwrap(), vec![mi(&[0, 0])]);
        let q = dims(&[2, 2, 2]);
        assert_eq!(
            enumerate_level(&q, 1).unwrap(),
            vec![mi(&[0, 0, 1]), mi(&[0, 1, 0]), mi(&[1, 0, 0])]
        );
    }

    #[test]
    fn enumerate_level_range() {
        let d = dims(&[2, 3]);
        assert!(matches!(
            enumerate_level(&d, 4),
            Err(Error::LevelOutOfRange { level: 4, max: 3 })
        ));
        assert!(enumerate_level(&d, -1).is_err());
    }

    #[test]
    fn level_count_examples() {
        let d = dims(&[2, 3]);
        let seq: Vec<u64> = (0..4).map(|n| level_count(&d, n)).collect();
        assert_eq!(seq, vec![1, 2, 2, 1]);
        assert_eq!(level_count(&dims(&[2, 2, 2, 2]), 2), 6);
        assert_eq!(level_count(&dims(&[3, 3]), 5), 0);
        assert_eq!(level_count(&dims(&[3, 3]), -1), 0);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(level_count_closed_form(&dims(&[2, 3]), 2), Some(2));
        assert_eq!(level_count_closed_form(&dims(&[3, 2]), 2), Some(2));
        assert_eq!(level_count_closed_form(&dims(&[2, 2, 2]), 3), Some(1));
        assert_eq!(level_count_closed_form(&dims(&[2, 3, 4]), 1), None);
    }

    #[test]
    fn offset_roundtrip() {
        let d = dims(&[2, 3, 4]);
        for p in 0..d.total() {
            assert_eq!(d.offset(&d.multi_index(p)), p);
        }
        assert_eq!(d.multi_index(1), mi(&[0, 0, 1]));
        assert_eq!(d.multi_index(4), mi(&[0, 1, 0]));
    }
}
