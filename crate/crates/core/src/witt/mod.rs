//! Truncated Witt vectors and the lattice model of the affine flag manifold
//! in unequal characteristic: self-dual Lie lattices between `p^n L_0` and
//! `p^{-n} L_0`, their images in `V_n = p^{-n}L_0/p^nL_0`, and Borel
//! subalgebras of the reductions.

mod lattice;
mod vectors;

pub use lattice::{
    borel_fiber_count, enumerate_lattices_direct, enumerate_x_n, LatticeModel, LieDatum, Submodule, XnReport,
};
pub use vectors::{structure_polys, StructurePolys, WittComponents, WittRing, WittScalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WittError {
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("mismatched rings: W_{}(F_{}) vs W_{}(F_{})", left.1, left.0, right.1, right.0)]
    Mismatch { left: (u32, usize), right: (u32, usize) },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate Killing form: {0}")]
    Degenerate(String),
    #[error("enumeration of {needed} elements exceeds the budget {budget}")]
    Budget { needed: u64, budget: u64 },
    #[error("reduction is not reductive: {0}")]
    NotReductive(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
