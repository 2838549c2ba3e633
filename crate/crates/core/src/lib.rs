//! Completely entangled subspaces of maximal dimension in `H_1 ⊗ … ⊗ H_k`.
//!
//! The subspace `S` is spanned by differences of standard product basis
//! vectors with equal index sums. Its complement is spanned by the level sums
//! `u_n` and contains exactly the Vandermonde product vectors `z^λ`; any
//! `N + 1` of them form an unextendible product basis of minimal size.
//!
//! Modules:
//! - [`graded_index`]: the grading of `H` by index sum and the level counts `a_n`.
//! - [`field`] and [`linalg`]: exact scalars and reduced-echelon subspaces.
//! - [`constructions`]: `S`, `S⊥`, graded pieces, UPBs and the matrix examples.
//! - [`verify`]: exhaustive finite-field and numerical product-vector searches.

pub mod constructions;
pub mod error;
pub mod field;
pub mod graded_index;
pub mod linalg;
pub mod verify;

pub use error::{Error, Result};
pub use graded_index::{Dims, MultiIndex};
