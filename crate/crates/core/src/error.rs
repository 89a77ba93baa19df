use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different {0}")]
    MixedSpec(&'static str),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid algebra parameters: {0}")]
    InvalidAlgebra(String),

    #[error("field Q(sqrt({0})) has no real embedding")]
    NoRealEmbedding(i64),

    /// A nonzero element with zero norm: the algebra is split there.
    #[error("element {0} has norm 0: algebra is split at this element; not a division ring for these parameters")]
    SplitElement(String),

    #[error("degree cap exceeded: iterate would have degree {degree} > cap {cap}")]
    DegreeCapExceeded { degree: u128, cap: usize },

    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    #[error("f(x) - x is identically zero: every point is fixed")]
    IdenticallyZero,

    #[error("numeric root iteration did not converge after {0} iterations")]
    NonConvergence(usize),

    #[error("{0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    /// True for errors caused by malformed user input rather than mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::InvalidField(_) | Error::InvalidAlgebra(_)
        )
    }
}
