use crate::error::{Error, Result};
use crate::field::{ExactField, Scalar, ToComplex64};
use crate::graded_index::{enumerate_level, Dims};
use crate::linalg::StateVector;
use num_complex::Complex64;

/// A product vector `y_1 ⊗ … ⊗ y_k`, stored by its factors.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductVector<F: Scalar> {
    dims: Dims,
    ctx: F::Ctx,
    factors: Vec<Vec<F>>,
}

impl<F: Scalar> ProductVector<F> {
    pub fn new(dims: &Dims, factors: Vec<Vec<F>>) -> Result<Self> {
        if factors.len() != dims.k() {
            return Err(Error::DimsMismatch(format!(
                "{} factors for dims {dims}",
                factors.len()
            )));
        }
        for (r, (f, &d)) in factors.iter().zip(dims.as_slice()).enumerate() {
            if f.len() != d {
                return Err(Error::DimsMismatch(format!(
                    "factor {r} has length {}, expected {d}",
                    f.len()
                )));
            }
            if f.iter().all(|c| c.is_zero()) {
                return Err(Error::ZeroFactor(r));
            }
        }
        let ctx = factors[0][0].ctx();
        if factors.iter().flatten().any(|c| c.ctx() != ctx) {
            return Err(Error::FieldMismatch("factors from different fields".into()));
        }
        Ok(ProductVector {
            dims: dims.clone(),
            ctx,
            factors,
        })
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn factors(&self) -> &[Vec<F>] {
        &self.factors
    }

    /// Dense coefficients: `Π_r a^r_{i_r}` at multi-index `(i_1, …, i_k)`.
    pub fn expand(&self) -> StateVector<F> {
        let mut acc = vec![F::one(&self.ctx)];
        for f in &self.factors {
            acc = acc
                .iter()
                .flat_map(|a| f.iter().map(move |b| a.clone() * b.clone()))
                .collect();
        }
        StateVector::new(&self.dims, acc).expect("expansion has the full length")
    }
}

impl<F: Scalar + ExactField> ProductVector<F> {
    /// Scale every factor so its first nonzero coordinate is 1.
    pub fn projective_normal_form(&self) -> Self {
        let factors = self
            .factors
            .iter()
            .map(|f| {
                let lead = f.iter().find(|c| !c.is_zero()).expect("nonzero factor").inv();
                f.iter().map(|c| lead.clone() * c.clone()).collect()
            })
            .collect();
        ProductVector {
            dims: self.dims.clone(),
            ctx: self.ctx.clone(),
            factors,
        }
    }
}

impl<F: Scalar + ToComplex64> ProductVector<F> {
    pub fn to_complex(&self) -> ProductVector<Complex64> {
        ProductVector {
            dims: self.dims.clone(),
            ctx: (),
            factors: self
                .factors
                .iter()
                .map(|f| f.iter().map(|c| c.to_complex64()).collect())
                .collect(),
        }
    }
}

/// A point of `F ∪ {∞}` labelling a Vandermonde product vector.
#[derive(Debug, Clone, PartialEq)]
pub enum VandermondePoint<F> {
    Finite(F),
    Infinity,
}

/// `u_n`: the sum of all standard basis vectors of level `n`.
pub fn u_vector<F: Scalar>(dims: &Dims, n: i64, ctx: &F::Ctx) -> Result<StateVector<F>> {
    let mut coeffs = vec![F::zero(ctx); dims.total()];
    for idx in enumerate_level(dims, n)? {
        coeffs[dims.offset(&idx)] = F::one(ctx);
    }
    StateVector::new(dims, coeffs)
}

/// `z^λ = ⊗_r (Σ_j λ^j e_j)` for finite `λ`, and `z^∞ = ⊗_r e_{d_r − 1}`.
pub fn z_vector<F: Scalar>(dims: &Dims, point: &VandermondePoint<F>, ctx: &F::Ctx) -> ProductVector<F> {
    let factors = dims
        .as_slice()
        .iter()
        .map(|&d| match point {
            VandermondePoint::Finite(lambda) => {
                let mut f = Vec::with_capacity(d);
                let mut pow = F::one(ctx);
                for _ in 0..d {
                    f.push(pow.clone());
                    pow = pow * lambda.clone();
                }
                f
            }
            VandermondePoint::Infinity => {
                let mut f = vec![F::zero(ctx); d];
                f[d - 1] = F::one(ctx);
                f
            }
        })
        .collect();
    ProductVector::new(dims, factors).expect("Vandermonde factors are nonzero")
}

/// Gram matrix `G_ij = ⟨v_i, v_j⟩` of the expansions.
pub fn gram<F: Scalar>(vectors: &[ProductVector<F>]) -> Result<Vec<Vec<F>>> {
    let expanded: Vec<StateVector<F>> = vectors.iter().map(|v| v.expand()).collect();
    expanded
        .iter()
        .map(|a| expanded.iter().map(|b| a.inner(b)).collect())
        .collect()
}
