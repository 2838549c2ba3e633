use super::product::{z_vector, ProductVector, VandermondePoint};
use super::spaces::{entangled_subspace, s_level};
use crate::error::{Error, Result};
use crate::field::{ExactField, Scalar};
use crate::graded_index::{enumerate_level, level_counts, Dims, MultiIndex};
use crate::linalg::{StateVector, Subspace};

/// The choices behind an unextendible product basis of a requested size.
#[derive(Debug, Clone, PartialEq)]
pub struct UpbSpec<F> {
    pub dims: Dims,
    pub size: usize,
    /// Levels whose `S^(n)` is absorbed into the span (empty for the minimal basis).
    pub levels: Vec<usize>,
    pub points: Vec<VandermondePoint<F>>,
    /// The level basis vector left out for each absorbed level.
    pub dropped: Vec<(usize, MultiIndex)>,
}

/// The integers `0, …, N`.
pub fn default_points<F: Scalar>(dims: &Dims, ctx: &F::Ctx) -> Vec<VandermondePoint<F>> {
    (0..=dims.n_max() as i64)
        .map(|n| VandermondePoint::Finite(F::from_i64(n, ctx)))
        .collect()
}

/// `N + 1` Vandermonde product vectors at pairwise distinct points. Their
/// span is `S⊥`, so they form an unextendible product basis of minimal size.
pub fn minimal_upb<F: Scalar>(
    dims: &Dims,
    points: &[VandermondePoint<F>],
    ctx: &F::Ctx,
) -> Result<Vec<ProductVector<F>>> {
    let expected = dims.n_max() + 1;
    if points.len() != expected {
        return Err(Error::PointCount {
            expected,
            got: points.len(),
        });
    }
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(Error::DuplicatePoint);
        }
    }
    Ok(points.iter().map(|p| z_vector(dims, p, ctx)).collect())
}

/// Subset of item indices whose weights sum to `target`.
///
/// Zero-weight items are never selected. Among feasible subsets the one that
/// includes the smallest possible index first is returned.
pub fn select_levels(weights: &[usize], target: usize) -> Option<Vec<usize>> {
    let n = weights.len();
    // reach[i][s]: some subset of items i.. sums to s
    let mut reach = vec![vec![false; target + 1]; n + 1];
    reach[n][0] = true;
    for i in (0..n).rev() {
        for s in 0..=target {
            reach[i][s] = reach[i + 1][s] || (s >= weights[i] && reach[i + 1][s - weights[i]]);
        }
    }
    if !reach[0][target] {
        return None;
    }
    let mut chosen = Vec::new();
    let mut s = target;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0 && s >= w && reach[i + 1][s - w] {
            chosen.push(i);
            s -= w;
        }
    }
    debug_assert_eq!(s, 0);
    Some(chosen)
}

/// For `k = 2`, an unextendible product basis with exactly `m` elements,
/// `d_1 + d_2 − 1 ≤ m ≤ d_1 d_2`.
///
/// The basis is the minimal one plus, for each chosen level `n`, every
/// level-`n` standard basis vector except the lexicographically last. The
/// result is checked by exact rank and by comparing its complement with
/// `⊕_{n ∉ M} S^(n)`.
pub fn any_dim_upb<F: ExactField>(
    dims: &Dims,
    m: usize,
    points: Option<Vec<VandermondePoint<F>>>,
    ctx: &F::Ctx,
) -> Result<(UpbSpec<F>, Vec<ProductVector<F>>)> {
    if dims.k() != 2 {
        return Err(Error::RequiresBipartite(dims.k()));
    }
    let min = dims.n_max() + 1;
    let max = dims.total();
    if m < min || m > max {
        return Err(Error::SizeOutOfRange { m, min, max });
    }
    let points = points.unwrap_or_else(|| default_points(dims, ctx));
    let mut vectors = minimal_upb(dims, &points, ctx)?;

    let weights: Vec<usize> = level_counts(dims).iter().map(|&a| a as usize - 1).collect();
    let levels = select_levels(&weights, m - min).ok_or_else(|| {
        Error::Internal(format!("no level subset reaches {} for dims {dims}", m - min))
    })?;

    let mut dropped = Vec::new();
    for &n in &levels {
        let mut level = enumerate_level(dims, n as i64)?;
        let last = level.pop().expect("chosen levels are nonempty");
        for idx in &level {
            let factors = idx
                .as_slice()
                .iter()
                .zip(dims.as_slice())
                .map(|(&i, &d)| {
                    let mut f = vec![F::zero(ctx); d];
                    f[i] = F::one(ctx);
                    f
                })
                .collect();
            vectors.push(ProductVector::new(dims, factors)?);
        }
        dropped.push((n, last));
    }

    let expansions: Vec<StateVector<F>> = vectors.iter().map(|v| v.expand()).collect();
    let span = Subspace::span(dims, ctx, &expansions)?;
    if span.dim() != m || vectors.len() != m {
        return Err(Error::Internal(format!(
            "constructed {} vectors of rank {}, wanted {m}",
            vectors.len(),
            span.dim()
        )));
    }
    let complement = span.orthocomplement();
    let mut expected = Subspace::zero(dims, ctx);
    for n in (0..=dims.n_max()).filter(|n| !levels.contains(n)) {
        expected = expected.sum(&s_level(dims, n as i64, ctx)?)?;
    }
    if !complement.equal(&expected)? || !entangled_subspace(dims, ctx).contains(&complement)? {
        return Err(Error::Internal("complement is not the expected part of S".into()));
    }

    let spec = UpbSpec {
        dims: dims.clone(),
        size: m,
        levels,
        points,
        dropped,
    };
    Ok((spec, vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    #[test]
    fn subset_sum_prefers_small_indices() {
        assert_eq!(select_levels(&[0, 1, 2, 1, 0], 0), Some(vec![]));
        assert_eq!(select_levels(&[0, 1, 2, 1, 0], 1), Some(vec![1]));
        assert_eq!(select_levels(&[0, 1, 2, 1, 0], 2), Some(vec![1, 3]));
        assert_eq!(select_levels(&[0, 1, 2, 1, 0], 3), Some(vec![1, 2]));
        assert_eq!(select_levels(&[0, 1, 2, 1, 0], 4), Some(vec![1, 2, 3]));
        assert_eq!(select_levels(&[0, 1, 2, 1, 0], 5), None);
        assert_eq!(select_levels(&[3, 5], 4), None);
    }

    #[test]
    fn minimal_upb_rejects_duplicates() {
        let d = Dims::new(vec![2, 3]).unwrap();
        let q = |x| VandermondePoint::Finite(Rational::from_i64(x, &()));
        let pts = vec![q(0), q(1), q(1), VandermondePoint::Infinity];
        assert_eq!(minimal_upb(&d, &pts, &()), Err(Error::DuplicatePoint));
        let pts = vec![q(0), VandermondePoint::Infinity, q(2), VandermondePoint::Infinity];
        assert_eq!(minimal_upb(&d, &pts, &()), Err(Error::DuplicatePoint));
        assert!(matches!(
            minimal_upb(&d, &pts[..2], &()),
            Err(Error::PointCount { expected: 4, got: 2 })
        ));
    }

    #[test]
    fn any_dim_ranges() {
        let d = Dims::new(vec![2, 3]).unwrap();
        assert!(matches!(
            any_dim_upb::<Rational>(&d, 7, None, &()),
            Err(Error::SizeOutOfRange { m: 7, min: 4, max: 6 })
        ));
        assert!(any_dim_upb::<Rational>(&d, 3, None, &()).is_err());
        let d3 = Dims::new(vec![2, 2, 2]).unwrap();
        assert_eq!(
            any_dim_upb::<Rational>(&d3, 5, None, &()),
            Err(Error::RequiresBipartite(3))
        );
    }

    #[test]
    fn any_dim_examples() {
        let d = Dims::new(vec![3, 3]).unwrap();
        let (spec, v) = any_dim_upb::<Rational>(&d, 5, None, &()).unwrap();
        assert!(spec.levels.is_empty());
        assert_eq!(v.len(), 5);
        let (spec, v) = any_dim_upb::<Rational>(&d, 9, None, &()).unwrap();
        assert_eq!(spec.levels, vec![1, 2, 3]);
        assert_eq!(v.len(), 9);
        let d = Dims::new(vec![2, 3]).unwrap();
        for m in 4..=6 {
            let (_, v) = any_dim_upb::<Rational>(&d, m, None, &()).unwrap();
            assert_eq!(v.len(), m);
        }
    }
}
