use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degenerate norm descriptor: {0}")]
    DegenerateDescriptor(String),
    #[error("operation requires a polytopal unit ball (lp with p in {{1, inf}} or a polytope)")]
    NonPolytopal,
    #[error("vertex enumeration exceeded the budget of {budget} vertices")]
    VertexBudgetExceeded { budget: usize },
    #[error("vector is not on the unit sphere (norm {norm})")]
    NotOnSphere { norm: f64 },
    #[error("functionals are linearly dependent")]
    DependentFunctionals,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("numerical degeneracy: {0}")]
    Numerical(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("model lacks an analytic description of its column closure")]
    NoAnalyticClosure,
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Inputs violate a documented precondition.
    Domain,
    /// The computation itself broke down (caps exceeded, LP failure, ...).
    Numerical,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Numerical(_) | Error::VertexBudgetExceeded { .. } => ErrorKind::Numerical,
            _ => ErrorKind::Domain,
        }
    }
}
