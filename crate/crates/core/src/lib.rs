//! Exact computations around parahoric subgroups of loop groups: affine Weyl
//! groups and their minimal coset subgroups, tori and alcoves, modules of
//! extended affine Weyl groups, Fourier matrices, PGL₂ over Laurent series
//! and Witt-vector lattice models.

pub mod alcove;
pub mod coxeter;
pub mod cyclotomic;
pub mod fourier;
pub mod fq;
pub mod linalg;
pub mod pgl2;
pub mod reps;
pub mod springer;
pub mod witt;

pub use coxeter::{AffineType, CartanDatum, CoxeterError, DiagramAutomorphism, ExtendedWeylElement, WeylElement};
pub use cyclotomic::Cyclo;
pub use alcove::{CellLabel, LevelOnePoint, TorusData, TorusPoint, TranslationLattice};
pub use pgl2::{IwahoriClass, Laurent, LaurentMatrix};
pub use witt::{WittRing, WittScalar};
