//! Two independent searches for product vectors inside a subspace.
//!
//! [`ff`] enumerates every projective product tuple over a prime field and
//! tests membership exactly. [`als`] maximizes the overlap of a unit product
//! vector with the subspace by alternating single-site eigenvector updates.
//! An empty result from the former is exact for `F_p`; a small overlap from
//! the latter is only a numerical margin.

pub mod als;
pub mod ff;
mod upb;

use num_complex::Complex64;

use crate::constructions::ProductVector;
use crate::field::{FieldTag, Fp};

pub use als::{max_product_overlap, orthonormalize, AlsOutcome, AlsParams, RestartTrace};
pub use ff::{classify_sperp, default_primes, ff_product_vectors, ClassifyReport, FfSearch, DEFAULT_BUDGET};
pub use upb::{verify_space, verify_upb, UpbCheckOptions, UpbVerification};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    FiniteField,
    Als,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    NoProductVectorFound,
    WitnessFound,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Parameters {
    FiniteField { prime: u64, budget: u128 },
    Als(AlsParams),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Exact(ProductVector<Fp>),
    Approx(ProductVector<Complex64>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Metrics {
    FiniteField {
        enumerated: u128,
    },
    Als {
        best_overlap: f64,
        best_restart: usize,
        total_sweeps: usize,
    },
}

/// Outcome of one product-vector search on one subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub method: Method,
    pub parameters: Parameters,
    pub verdict: Verdict,
    /// Nonempty iff the verdict is [`Verdict::WitnessFound`].
    pub witnesses: Vec<Witness>,
    pub metrics: Metrics,
    /// Dimension of the searched subspace in each field it was built over.
    pub certified_dims: Vec<(FieldTag, usize)>,
}

impl VerificationReport {
    pub fn found_product_vector(&self) -> bool {
        self.verdict == Verdict::WitnessFound
    }

    /// Whether the subspace had the same dimension in every field searched.
    pub fn dims_consistent(&self) -> bool {
        self.certified_dims.windows(2).all(|w| w[0].1 == w[1].1)
    }
}
