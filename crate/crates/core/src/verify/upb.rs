use super::als::{als_report, AlsParams};
use super::ff::{ff_report, DEFAULT_BUDGET};
use super::VerificationReport;
use crate::constructions::ProductVector;
use crate::error::{Error, Result};
use crate::field::Rational;
use crate::graded_index::Dims;
use crate::linalg::{clear_denominators, StateVector, Subspace};

#[derive(Debug, Clone, PartialEq)]
pub struct UpbCheckOptions {
    /// Primes for the exhaustive oracle; empty skips it.
    pub primes: Vec<u64>,
    pub budget: u128,
    /// Parameters for the numerical search; `None` skips it.
    pub als: Option<AlsParams>,
}

impl UpbCheckOptions {
    pub fn finite_field(primes: Vec<u64>) -> Self {
        UpbCheckOptions {
            primes,
            budget: DEFAULT_BUDGET,
            als: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UpbVerification {
    pub count: usize,
    pub rank: usize,
    pub independent: bool,
    /// `rank ≥ N + 1`; a smaller span has a complement too large to be
    /// completely entangled.
    pub meets_minimum: bool,
    pub complement_dim: usize,
    /// One report per complement search, in the order run.
    pub complement_checks: Vec<VerificationReport>,
}

impl UpbVerification {
    pub fn is_upb(&self) -> bool {
        self.independent
            && self.meets_minimum
            && self
                .complement_checks
                .iter()
                .all(|r| !r.found_product_vector() && r.dims_consistent())
    }
}

/// Check that `vectors` form an unextendible product basis: exact linear
/// independence, span of dimension at least `N + 1`, and no product vector in
/// the complement. The complement searches run even when the first two checks
/// already fail, so that a witness is reported.
pub fn verify_upb(
    dims: &Dims,
    vectors: &[ProductVector<Rational>],
    opts: &UpbCheckOptions,
) -> Result<UpbVerification> {
    if vectors.is_empty() {
        return Err(Error::EmptyInput);
    }
    if vectors.iter().any(|v| v.dims() != dims) {
        return Err(Error::DimsMismatch("product vector dims differ".into()));
    }
    let expansions: Vec<StateVector<Rational>> = vectors.iter().map(|v| v.expand()).collect();
    let span = Subspace::span(dims, &(), &expansions)?;
    let complement = span.orthocomplement();
    let rows: Vec<StateVector<Rational>> = complement.rows().collect();
    let generators = clear_denominators(&rows);

    let mut checks = Vec::new();
    for &p in &opts.primes {
        checks.push(ff_report(dims, &generators, complement.dim(), p, opts.budget)?);
    }
    if let Some(params) = &opts.als {
        let float: Vec<_> = rows.iter().map(|r| r.to_complex()).collect();
        checks.push(als_report(dims, &float, complement.dim(), params)?);
    }
    Ok(UpbVerification {
        count: vectors.len(),
        rank: span.dim(),
        independent: span.dim() == vectors.len(),
        meets_minimum: span.dim() > dims.n_max(),
        complement_dim: complement.dim(),
        complement_checks: checks,
    })
}

/// Search a subspace, given by integer generators, for product vectors with
/// each requested method.
pub fn verify_space(
    dims: &Dims,
    generators: &[StateVector<Rational>],
    opts: &UpbCheckOptions,
) -> Result<Vec<VerificationReport>> {
    let space = Subspace::span(dims, &(), generators)?;
    let mut checks = Vec::new();
    for &p in &opts.primes {
        checks.push(ff_report(dims, generators, space.dim(), p, opts.budget)?);
    }
    if let Some(params) = &opts.als {
        let float: Vec<_> = space.rows().map(|r| r.to_complex()).collect();
        checks.push(als_report(dims, &float, space.dim(), params)?);
    }
    Ok(checks)
}
