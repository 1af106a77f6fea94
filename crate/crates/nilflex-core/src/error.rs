//! Error type shared by all nilflex components.

use thiserror::Error;

/// Errors produced by parsing, algebra construction and the exact solvers.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("Jacobi violation: d^2(alpha_{generator}) != 0")]
    JacobiViolation { generator: usize },

    #[error("lower central series does not reach zero: algebra is not nilpotent")]
    NotNilpotent,

    #[error("dimension overflow: {0} generators requested, at most 9 supported")]
    DimensionOverflow(usize),

    #[error("vector is not a cocycle")]
    NotACocycle,

    #[error("missing assignment for variable {0}")]
    MissingAssignment(char),

    #[error("circular substitution for variable {0}")]
    CircularSubstitution(char),

    #[error("no symplectic structure: nondegeneracy polynomial is identically zero")]
    NoSymplecticStructure,

    #[error("degenerate 2-form: Pfaffian vanishes ({pfaffian})")]
    DegenerateForm { pfaffian: String },

    #[error("2-form is not closed")]
    NotClosed,

    #[error("point is not symplectic: nondegeneracy polynomial vanishes there")]
    NonSymplecticPoint,

    #[error("stratum outside symplectic region: no admissible witness found")]
    StratumOutsideSymplecticRegion,

    #[error("dimension must be even for a symplectic structure (got {0})")]
    OddDimension(usize),

    #[error("internal convention fault: {identity} fails in degree {degree}")]
    ConventionFault { identity: String, degree: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("inexact polynomial division")]
    InexactDivision,

    #[error("unknown output format {0:?}")]
    UnknownFormat(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
