//! Lattice width, hollowness and difference bodies for 3-polytopes with
//! coordinates in Q(sqrt 2), measured against affine lattices.

mod geometry;
mod lp;
mod width;

use thiserror::Error;

pub use geometry::{
    difference_body_vertices, facet_hyperplanes, fmt_vec3, hollow_check, AffineFunctional, AffineLattice, Functional,
    Hollowness, Polytope, Vec3,
};
pub use lp::is_in_convex_hull;
pub use width::{dual_lattice, lattice_width, width_in_direction, WidthResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WidthError {
    #[error("polytope has no vertices")]
    Empty,
    #[error("duplicate vertex {0}")]
    DuplicateVertex(usize),
    #[error("polytope is not full-dimensional")]
    Degenerate,
    #[error("lattice basis is singular")]
    SingularBasis,
    #[error("operation requires a simplex with 4 vertices")]
    NotSimplex,
    #[error("enumeration box has {0} points, above the limit")]
    BoxTooLarge(u128),
}
