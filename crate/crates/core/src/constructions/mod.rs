//! Explicit constructions: the completely entangled subspace `S`, its graded
//! pieces, Vandermonde product vectors, unextendible product bases, and the
//! two matrix-space examples.

mod examples;
mod product;
mod spaces;
mod upb;

pub use examples::{example1_space, example2_spaces, to_matrix, Example2};
pub use product::{gram, u_vector, z_vector, ProductVector, VandermondePoint};
pub use spaces::{
    entangled_generators, entangled_subspace, level_generators, level_space, onb_level, s_level,
    s_perp, t_level, u_generators,
};
pub use upb::{any_dim_upb, default_points, minimal_upb, select_levels, UpbSpec};
