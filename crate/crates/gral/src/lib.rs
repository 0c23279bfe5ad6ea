//! Finite-dimensional algebras graded by finite categories and groupoids,
//! over exact coefficient rings (prime fields, rationals, integers).
//!
//! The crate builds such algebras from structure constants or from crossed
//! systems (components, homomorphisms, cocycle), validates the grading
//! axioms, and analyzes commutants, centers, nondegeneracy, two-sided
//! ideals and the ideal intersection property on finite instances.

pub mod analysis;
pub mod catalog;
pub mod category;
pub mod crossed;
pub mod graded;
pub mod json;
pub mod linalg;
pub mod report;
pub mod scalar;

pub use category::{FiniteCategory, MorphismId};
pub use graded::{Element, GradedAlgebra};
pub use linalg::Subspace;
pub use scalar::{CoefficientRing, Scalar};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("not a unit: {0}")]
    NonUnit(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(CoefficientRing, CoefficientRing),
    #[error("elements belong to different algebras: {0}")]
    AlgebraMismatch(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("unknown morphism: {0}")]
    UnknownMorphism(String),
    #[error("{0} requires field coefficients")]
    FieldRequired(&'static str),
    #[error("projective point count {points} exceeds budget {budget}")]
    TooLarge { points: u128, budget: u64 },
    #[error("invalid crossed system: {0}")]
    InvalidSystem(String),
    #[error("sigma is not a functor: {0}")]
    NotAFunctor(String),
    #[error("subring is not commutative: {0}")]
    NotCommutative(String),
    #[error("not a subring: {0}")]
    NotASubring(String),
    #[error("not a ring homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("unknown catalog entry: {0}")]
    UnknownEntry(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("invalid input: {0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
