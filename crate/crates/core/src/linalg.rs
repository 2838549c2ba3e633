//! Dense state vectors and exact subspace calculus.
//!
//! A [`Subspace`] is stored as its reduced row-echelon basis, which is
//! canonical: two subspaces are equal exactly when their rows are equal.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{ExactField, Fp, Rational, Scalar, ToComplex64};
use crate::graded_index::{Dims, MultiIndex};
use num_complex::Complex64;

/// Coefficients of a vector of `H` over the global lexicographic basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<F: Scalar> {
    dims: Dims,
    ctx: F::Ctx,
    coeffs: Vec<F>,
}

impl<F: Scalar> StateVector<F> {
    pub fn new(dims: &Dims, coeffs: Vec<F>) -> Result<Self> {
        if coeffs.len() != dims.total() {
            return Err(Error::DimsMismatch(format!(
                "{} coefficients for dims {dims} (total {})",
                coeffs.len(),
                dims.total()
            )));
        }
        let ctx = coeffs[0].ctx();
        if coeffs.iter().any(|c| c.ctx() != ctx) {
            return Err(Error::FieldMismatch(
                "coefficients from different fields".into(),
            ));
        }
        Ok(StateVector {
            dims: dims.clone(),
            ctx,
            coeffs,
        })
    }

    pub fn zeros(dims: &Dims, ctx: &F::Ctx) -> Self {
        StateVector {
            dims: dims.clone(),
            ctx: ctx.clone(),
            coeffs: vec![F::zero(ctx); dims.total()],
        }
    }

    /// The standard basis vector `e_{i_1} ⊗ … ⊗ e_{i_k}`.
    pub fn basis(dims: &Dims, idx: &MultiIndex, ctx: &F::Ctx) -> Self {
        let mut v = Self::zeros(dims, ctx);
        v.coeffs[dims.offset(idx)] = F::one(ctx);
        v
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn get(&self, idx: &MultiIndex) -> &F {
        &self.coeffs[self.dims.offset(idx)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dims != other.dims {
            return Err(Error::DimsMismatch(format!("{} vs {}", self.dims, other.dims)));
        }
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                F::tag(&self.ctx),
                F::tag(&other.ctx)
            )));
        }
        Ok(())
    }

    /// `⟨self, other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<F> {
        self.check_compatible(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(F::zero(&self.ctx), |acc, (a, b)| acc + a.conj() * b.clone()))
    }

    pub fn scale(&self, c: &F) -> Self {
        StateVector {
            dims: self.dims.clone(),
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|x| c.clone() * x.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(StateVector {
            dims: self.dims.clone(),
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-F::one(&self.ctx)))
    }
}

impl<F: Scalar + ToComplex64> StateVector<F> {
    pub fn to_complex(&self) -> StateVector<Complex64> {
        StateVector {
            dims: self.dims.clone(),
            ctx: (),
            coeffs: self.coeffs.iter().map(|c| c.to_complex64()).collect(),
        }
    }
}

impl StateVector<Complex64> {
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// A subspace of `H`, held as a reduced row-echelon basis.
///
/// Rows are stored sparsely, keyed by pivot column, each as `(column, value)`
/// pairs in increasing column order with `(pivot, 1)` first.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<F: ExactField> {
    dims: Dims,
    ctx: F::Ctx,
    rows: BTreeMap<usize, Vec<(usize, F)>>,
}

impl<F: ExactField> Subspace<F> {
    pub fn zero(dims: &Dims, ctx: &F::Ctx) -> Self {
        Subspace {
            dims: dims.clone(),
            ctx: ctx.clone(),
            rows: BTreeMap::new(),
        }
    }

    pub fn full(dims: &Dims, ctx: &F::Ctx) -> Self {
        let rows = (0..dims.total()).map(|i| (i, vec![(i, F::one(ctx))])).collect();
        Subspace {
            dims: dims.clone(),
            ctx: ctx.clone(),
            rows,
        }
    }

    /// Reduced echelon basis of the span of `vectors`.
    pub fn span(dims: &Dims, ctx: &F::Ctx, vectors: &[StateVector<F>]) -> Result<Self> {
        let mut s = Self::zero(dims, ctx);
        for v in vectors {
            s.absorb(v)?;
        }
        Ok(s)
    }

    /// Extend the subspace by `v`. Returns whether the dimension grew.
    pub fn absorb(&mut self, v: &StateVector<F>) -> Result<bool> {
        self.check_vector(v)?;
        Ok(self.insert_row(v.coeffs.clone()))
    }

    fn check_vector(&self, v: &StateVector<F>) -> Result<()> {
        if v.dims != self.dims {
            return Err(Error::DimsMismatch(format!("{} vs {}", v.dims, self.dims)));
        }
        if v.ctx != self.ctx {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                F::tag(&v.ctx),
                F::tag(&self.ctx)
            )));
        }
        Ok(())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if other.dims != self.dims {
            return Err(Error::DimsMismatch(format!("{} vs {}", other.dims, self.dims)));
        }
        if other.ctx != self.ctx {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                F::tag(&other.ctx),
                F::tag(&self.ctx)
            )));
        }
        Ok(())
    }

    /// Eliminate every pivot column from a dense row. A basis row only has
    /// entries right of its pivot, so one left-to-right pass suffices.
    fn reduce(&self, row: &mut [F]) {
        if self.rows.is_empty() {
            return;
        }
        for c in 0..row.len() {
            if row[c].is_zero() {
                continue;
            }
            if let Some(basis_row) = self.rows.get(&c) {
                let coef = row[c].clone();
                for (j, x) in basis_row {
                    row[*j] = row[*j].clone() - coef.clone() * x.clone();
                }
            }
        }
    }

    fn insert_row(&mut self, mut row: Vec<F>) -> bool {
        self.reduce(&mut row);
        let Some(pivot) = row.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = row[pivot].inv();
        let new: Vec<(usize, F)> = row
            .into_iter()
            .enumerate()
            .skip(pivot)
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j, inv.clone() * c))
            .collect();
        for other in self.rows.values_mut() {
            if let Ok(at) = other.binary_search_by_key(&pivot, |e| e.0) {
                let coef = other[at].1.clone();
                *other = sparse_axpy(other, &coef, &new);
            }
        }
        self.rows.insert(pivot, new);
        true
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Basis rows as dense vectors, in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = StateVector<F>> + '_ {
        self.rows.values().map(|r| {
            let mut coeffs = vec![F::zero(&self.ctx); self.dims.total()];
            for (j, x) in r {
                coeffs[*j] = x.clone();
            }
            StateVector {
                dims: self.dims.clone(),
                ctx: self.ctx.clone(),
                coeffs,
            }
        })
    }

    pub fn member(&self, v: &StateVector<F>) -> Result<bool> {
        self.check_vector(v)?;
        let mut row = v.coeffs.clone();
        self.reduce(&mut row);
        Ok(row.iter().all(|c| c.is_zero()))
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        for r in other.rows() {
            if !self.member(&r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Orthogonal complement under `⟨x, y⟩ = Σ conj(x_i) y_i`.
    pub fn orthocomplement(&self) -> Self {
        let total = self.dims.total();
        // y ⊥ row  ⇔  Σ conj(row_i) y_i = 0. On the free columns y is
        // arbitrary; each pivot coordinate is then forced.
        let mut is_pivot = vec![false; total];
        for &p in self.rows.keys() {
            is_pivot[p] = true;
        }
        let mut out = Self::zero(&self.dims, &self.ctx);
        for free in (0..total).filter(|&c| !is_pivot[c]) {
            let mut y = vec![F::zero(&self.ctx); total];
            y[free] = F::one(&self.ctx);
            for (&p, row) in &self.rows {
                if let Ok(at) = row.binary_search_by_key(&free, |e| e.0) {
                    // pivot entry is 1, so y_p + conj(row_free) = 0
                    y[p] = -row[at].1.conj();
                }
            }
            out.insert_row(y);
        }
        out
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for r in other.rows() {
            out.insert_row(r.coeffs);
        }
        Ok(out)
    }

    /// `A ∩ B = (A⊥ + B⊥)⊥`, valid for any non-degenerate form.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self
            .orthocomplement()
            .sum(&other.orthocomplement())?
            .orthocomplement())
    }

    pub fn equal(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.rows == other.rows)
    }
}

/// `a − coef · b` on sorted sparse rows.
fn sparse_axpy<F: Scalar>(a: &[(usize, F)], coef: &F, b: &[(usize, F)]) -> Vec<(usize, F)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x.0 == y.0 => {
                i += 1;
                j += 1;
                (x.0, x.1.clone() - coef.clone() * y.1.clone())
            }
            (Some(x), Some(y)) if x.0 < y.0 => {
                i += 1;
                x.clone()
            }
            (Some(x), None) => {
                i += 1;
                x.clone()
            }
            (_, Some(y)) => {
                j += 1;
                (y.0, -(coef.clone() * y.1.clone()))
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

fn axpy<F: Scalar>(row: &mut [F], c: &F, basis_row: &[F]) {
    for (x, b) in row.iter_mut().zip(basis_row) {
        if !b.is_zero() {
            *x = x.clone() - c.clone() * b.clone();
        }
    }
}

/// Basis of the relation space `{c : Σ c_i v_i = 0}` of a list of vectors.
pub fn linear_relations<F: ExactField>(
    dims: &Dims,
    ctx: &F::Ctx,
    vectors: &[StateVector<F>],
) -> Result<Vec<Vec<F>>> {
    // Eliminate on the augmented rows [v_i | e_i]; rows whose vector part
    // reduces to zero carry a relation in their tag part.
    let total = dims.total();
    let count = vectors.len();
    let mut pivots: Vec<(usize, Vec<F>)> = Vec::new();
    let mut relations = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if v.dims != *dims || v.ctx != *ctx {
            return Err(Error::DimsMismatch("vector does not match dims/field".into()));
        }
        let mut row: Vec<F> = v.coeffs.clone();
        row.extend((0..count).map(|j| if j == i { F::one(ctx) } else { F::zero(ctx) }));
        for (p, prow) in &pivots {
            if !row[*p].is_zero() {
                let c = row[*p].clone();
                axpy(&mut row, &c, prow);
            }
        }
        match row[..total].iter().position(|c| !c.is_zero()) {
            Some(p) => {
                let inv = row[p].inv();
                for c in row.iter_mut() {
                    *c = inv.clone() * c.clone();
                }
                pivots.push((p, row));
            }
            None => relations.push(row[total..].to_vec()),
        }
    }
    Ok(relations)
}

/// Span over `F_p` of integer-coefficient generators.
///
/// The echelon form is computed from the reduced generators themselves, never
/// from a rational echelon form.
pub fn reduce_mod_p(dims: &Dims, generators: &[StateVector<Rational>], p: u64) -> Result<Subspace<Fp>> {
    if !crate::field::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut s = Subspace::zero(dims, &p);
    for g in generators {
        if g.dims() != dims {
            return Err(Error::DimsMismatch(format!("{} vs {dims}", g.dims())));
        }
        let coeffs = g
            .coeffs()
            .iter()
            .map(|c| {
                if !c.is_integer() {
                    return Err(Error::NonInteger(c.to_string()));
                }
                let r = c.numer().mod_floor(&p.into());
                Ok(Fp::new(r.to_i128().expect("residue fits"), p))
            })
            .collect::<Result<Vec<_>>>()?;
        s.insert_row(coeffs);
    }
    Ok(s)
}

/// Scale each vector by the lcm of its denominators (and divide by the gcd of
/// the numerators), giving primitive integer vectors with the same span.
pub fn clear_denominators(vectors: &[StateVector<Rational>]) -> Vec<StateVector<Rational>> {
    use num_bigint::BigInt;
    vectors
        .iter()
        .map(|v| {
            let lcm = v
                .coeffs()
                .iter()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let ints: Vec<BigInt> = v
                .coeffs()
                .iter()
                .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
                .collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            let g = if g.is_zero() { BigInt::one() } else { g.abs() };
            let coeffs = ints
                .into_iter()
                .map(|x| Rational::from_integer(x / &g))
                .collect();
            StateVector::new(v.dims(), coeffs).expect("same shape")
        })
        .collect()
}
