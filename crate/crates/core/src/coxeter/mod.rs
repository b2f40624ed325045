//! Affine Cartan data, affine Weyl group arithmetic, parabolic subgroups and
//! the diagram automorphism group Ω.

pub mod cartan;
pub mod omega;
pub mod parabolic;
pub mod weyl;

pub use cartan::{AffineType, CartanDatum};
pub use omega::{
    fixed_subgroup_generators, omega_group, omega_splitting, omega_stabilizer, DiagramAutomorphism, OmegaSplitting,
    OrbitGenerator, SplittingCase,
};
pub use parabolic::{
    complement, element_order, in_min_coset_subgroup, longest_element, min_coset_generators, parabolic_elements,
    quotient_coxeter_matrix, CosetGenerator, NodeSet, Order, DEFAULT_ORDER_CAP,
};
pub use weyl::{parse_word, ExtendedWeylElement, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxeterError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid Cartan datum: {0}")]
    InvalidDatum(String),
    #[error("elements belong to different Cartan data")]
    DatumMismatch,
    #[error("the parabolic subgroup on all nodes is infinite")]
    InfiniteGroup,
    #[error("ss_{0} is not in the minimal coset subgroup")]
    NotInMinCosetSubgroup(usize),
    #[error("order of ss_{0} ss_{1} undecided within the cap")]
    UndecidedOrder(usize, usize),
    #[error("automorphism does not stabilize J")]
    NotInStabilizer,
    #[error("fixed-point or membership check failed for orbit {0:?}")]
    OrbitCheckFailed(Vec<usize>),
    #[error("structural error: {0}")]
    Structural(String),
}

/// Builds a node set from a slice.
pub fn nodes(v: &[usize]) -> NodeSet {
    v.iter().copied().collect()
}
