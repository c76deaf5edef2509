//! Error type shared by all geometry modules.

use thiserror::Error;

/// Errors produced by geometric constructions and solvers.
#[derive(Debug, Clone, Error)]
pub enum GeomError {
    /// Input violates a nondegeneracy precondition.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A point expected on a carrier plane lies off it.
    #[error("point off carrier plane by {dist:e}")]
    OffPlane { dist: f64 },

    /// Concentric spheres/circles have no radical locus.
    #[error("concentric inputs have no radical locus")]
    Concentric,

    /// Both tangency classifications hold (degenerate radius).
    #[error("ambiguous tangency classification")]
    AmbiguousTangency,

    /// A construction has no real solution.
    #[error("no real solution: {0}")]
    NoRealSolution(String),

    /// Configuration outside the supported regime.
    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    /// A verified theorem failed on a concrete instance. Never dropped
    /// silently; the harness surfaces these as flagged records.
    #[error("theorem check `{check}` failed with residual {residual:e}")]
    TheoremViolation { check: String, residual: f64 },

    /// An iterative solve did not converge from any start.
    #[error("unresolved numeric solve: {0}")]
    Unresolved(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
