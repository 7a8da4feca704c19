use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("negative exponent {0}")]
    NegativeExponent(i64),

    #[error("polynomial is not divisible by the divisor")]
    NotDivisible,

    #[error("expected a univariate polynomial: {0}")]
    Multivariate(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("element is not in the ring: {0}")]
    NotInRing(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("not causal: {0}")]
    NotCausal(String),

    #[error("transfer function is not causal in the delay variable: {0}")]
    NotCausalTf(String),

    #[error("plant is not stabilizable")]
    NotStabilizable,

    #[error("feedback loop is ill-posed: det(E + PC) = 0")]
    IllPosed,

    #[error("instantaneous algebraic loop is singular at step {0}")]
    AlgebraicLoopSingular(usize),

    #[error("no Z-nonsingular full-size minor exists")]
    NoNonsingularMinor,

    #[error("repair of the controller denominator failed: {0}")]
    RepairImpossible(String),

    #[error("element is not in the generalized elementary factor")]
    MembershipFailed,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
