//! The two matrix-space examples. `e_i ⊗ e_j` is identified with the matrix
//! unit `E_ij`, which is the same as the lexicographic order on `(i, j)`.

use super::product::{z_vector, ProductVector, VandermondePoint};
use crate::error::Result;
use crate::field::{Rational, Scalar};
use crate::graded_index::{Dims, MultiIndex};
use crate::linalg::{StateVector, Subspace};

/// View a vector of `H_1 ⊗ H_2` as a `d_1 × d_2` matrix.
pub fn to_matrix<F: Scalar>(v: &StateVector<F>) -> Vec<Vec<F>> {
    let d = v.dims().as_slice();
    assert_eq!(d.len(), 2, "matrix view needs k = 2");
    v.coeffs().chunks(d[1]).map(|r| r.to_vec()).collect()
}

fn constraint(dims: &Dims, entries: &[(usize, usize)]) -> StateVector<Rational> {
    let mut c = vec![Rational::zero(&()); dims.total()];
    for &(i, j) in entries {
        c[dims.offset(&MultiIndex(vec![i, j]))] = Rational::one(&());
    }
    StateVector::new(dims, c).expect("full length")
}

/// `{[a_ij] : Σ_{i+j=n} a_ij = 0 for all n}`, the kernel of the anti-diagonal
/// sums, built from the constraints rather than from difference generators.
pub fn example1_space(d1: usize, d2: usize) -> Result<Subspace<Rational>> {
    let dims = Dims::new(vec![d1, d2])?;
    let constraints: Vec<StateVector<Rational>> = (0..d1 + d2 - 1)
        .map(|n| {
            let cells: Vec<(usize, usize)> = (0..d1)
                .filter(|&i| n >= i && n - i < d2)
                .map(|i| (i, n - i))
                .collect();
            constraint(&dims, &cells)
        })
        .collect();
    Ok(Subspace::span(&dims, &(), &constraints)?.orthocomplement())
}

#[derive(Debug, Clone)]
pub struct Example2 {
    /// Completely entangled, strictly smaller than `S`.
    pub m: Subspace<Rational>,
    /// Computed as the complement of `m`.
    pub m_perp: Subspace<Rational>,
    /// Product vectors of `m_perp`: `z^λ` for `λ = 0..6` and `E_33`.
    pub r: Vec<ProductVector<Rational>>,
}

/// The 4×4 example whose completely entangled `M` has a complement not
/// spanned by its product vectors.
pub fn example2_spaces() -> Example2 {
    let dims = Dims::new(vec![4, 4]).expect("valid dims");
    let rows: [&[(usize, usize)]; 8] = [
        &[(0, 0)],
        &[(0, 1), (1, 0)],
        &[(0, 2), (1, 1), (2, 0)],
        &[(0, 3), (1, 2)],
        &[(2, 1), (3, 0)],
        &[(1, 3), (2, 2), (3, 1)],
        &[(2, 3), (3, 2)],
        &[(3, 3)],
    ];
    let constraints: Vec<StateVector<Rational>> = rows.iter().map(|c| constraint(&dims, c)).collect();
    let m = Subspace::span(&dims, &(), &constraints)
        .expect("constraints share dims")
        .orthocomplement();
    let m_perp = m.orthocomplement();
    let mut r: Vec<ProductVector<Rational>> = (0..=6)
        .map(|l| z_vector(&dims, &VandermondePoint::Finite(Rational::from_i64(l, &())), &()))
        .collect();
    r.push(z_vector(&dims, &VandermondePoint::Infinity, &()));
    Example2 { m, m_perp, r }
}
