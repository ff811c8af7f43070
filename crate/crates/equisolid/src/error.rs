use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("value not representable: {0}")]
    NotRepresentable(String),

    #[error("group did not close within cap {cap}")]
    ClosureCapExceeded { cap: usize },

    #[error("group order {order} above the supported bound {bound}")]
    UnsupportedOrder { order: usize, bound: usize },

    #[error("model mismatch: expected {expected}, got {got}")]
    ModelMismatch { expected: String, got: String },

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("base point of the rational map: {0}")]
    BasePoint(String),

    #[error("not an automorphism of the model: {0}")]
    NotAnAutomorphism(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0}")]
    Parse(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
