use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An exhaustive evaluation would visit more configurations than allowed.
    #[error("evaluation needs {estimate:.3e} terms, above the cap of {cap}")]
    CapExceeded { estimate: f64, cap: u64 },

    #[error("group mismatch: expected {expected}, found {found}")]
    GroupMismatch { expected: String, found: String },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("no vertex weight of arity {0}")]
    MissingArity(usize),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("graph has no rotation system")]
    MissingRotation,

    #[error("invalid rotation at vertex {vertex}: {reason}")]
    InvalidRotation { vertex: usize, reason: String },

    #[error("index {index} out of range for {what} (size {size})")]
    OutOfRange { what: &'static str, index: usize, size: usize },

    #[error("graph is not {0}-regular")]
    NotRegular(usize),

    #[error("weight table is not symmetric")]
    NotSymmetric,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{what} residual {residual:.3e} exceeds tolerance")]
    Residual { what: &'static str, residual: f64 },

    /// Two routes that must agree exactly did not.
    #[error("internal consistency failure in {what}: {left} != {right}")]
    Mismatch { what: &'static str, left: String, right: String },
}
