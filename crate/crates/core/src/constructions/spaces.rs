use std::f64::consts::PI;

use num_complex::Complex64;

use super::product::u_vector;
use crate::error::Result;
use crate::field::{ExactField, Scalar};
use crate::graded_index::{enumerate_level, Dims};
use crate::linalg::{StateVector, Subspace};

/// Difference generators of `S^(n)`: `b_0 − b_j` for `j ≥ 1`, where `b_j`
/// runs over the level-`n` basis vectors in lexicographic order.
pub fn level_generators<F: Scalar>(dims: &Dims, n: i64, ctx: &F::Ctx) -> Result<Vec<StateVector<F>>> {
    let level = enumerate_level(dims, n)?;
    let Some((anchor, rest)) = level.split_first() else {
        return Ok(Vec::new());
    };
    let a = dims.offset(anchor);
    Ok(rest
        .iter()
        .map(|idx| {
            let mut coeffs = vec![F::zero(ctx); dims.total()];
            coeffs[a] = F::one(ctx);
            coeffs[dims.offset(idx)] = -F::one(ctx);
            StateVector::new(dims, coeffs).expect("full length")
        })
        .collect())
}

/// Generators of `S` across all levels; integer-valued in every field.
pub fn entangled_generators<F: Scalar>(dims: &Dims, ctx: &F::Ctx) -> Vec<StateVector<F>> {
    (0..=dims.n_max() as i64)
        .flat_map(|n| level_generators(dims, n, ctx).expect("level in range"))
        .collect()
}

/// `u_0, …, u_N`.
pub fn u_generators<F: Scalar>(dims: &Dims, ctx: &F::Ctx) -> Vec<StateVector<F>> {
    (0..=dims.n_max() as i64)
        .map(|n| u_vector(dims, n, ctx).expect("level in range"))
        .collect()
}

/// The completely entangled subspace `S`, of dimension `Π d_r − (N + 1)`.
pub fn entangled_subspace<F: ExactField>(dims: &Dims, ctx: &F::Ctx) -> Subspace<F> {
    Subspace::span(dims, ctx, &entangled_generators(dims, ctx)).expect("generators share dims")
}

/// `S⊥ = span{u_0, …, u_N}`.
pub fn s_perp<F: ExactField>(dims: &Dims, ctx: &F::Ctx) -> Subspace<F> {
    Subspace::span(dims, ctx, &u_generators(dims, ctx)).expect("generators share dims")
}

pub fn s_level<F: ExactField>(dims: &Dims, n: i64, ctx: &F::Ctx) -> Result<Subspace<F>> {
    Subspace::span(dims, ctx, &level_generators(dims, n, ctx)?)
}

pub fn t_level<F: ExactField>(dims: &Dims, n: i64, ctx: &F::Ctx) -> Result<Subspace<F>> {
    Subspace::span(dims, ctx, &[u_vector(dims, n, ctx)?])
}

/// `H^(n)`, spanned by the standard basis vectors of level `n`.
pub fn level_space<F: ExactField>(dims: &Dims, n: i64, ctx: &F::Ctx) -> Result<Subspace<F>> {
    let basis: Vec<StateVector<F>> = enumerate_level(dims, n)?
        .iter()
        .map(|idx| StateVector::basis(dims, idx, ctx))
        .collect();
    Subspace::span(dims, ctx, &basis)
}

/// Character basis of `H^(n)`: `v_j = a_n^{-1/2} Σ_t ω^{jt} b_t` with
/// `ω = exp(2πi / a_n)`. `v_0` is normalized `u_n`; the rest span `S^(n)`.
pub fn onb_level(dims: &Dims, n: i64) -> Result<Vec<StateVector<Complex64>>> {
    let level = enumerate_level(dims, n)?;
    let a = level.len();
    let norm = 1.0 / (a as f64).sqrt();
    Ok((0..a)
        .map(|j| {
            let mut coeffs = vec![Complex64::new(0.0, 0.0); dims.total()];
            for (t, idx) in level.iter().enumerate() {
                // reduce jt mod a before scaling to keep the phase accurate
                let phase = 2.0 * PI * ((j * t) % a) as f64 / a as f64;
                coeffs[dims.offset(idx)] = Complex64::from_polar(norm, phase);
            }
            StateVector::new(dims, coeffs).expect("full length")
        })
        .collect())
}
