use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("exponent at position {pos} is not a non-negative integer")]
    NonIntegerExponent { pos: usize },

    #[error("ring mismatch: {left} vs {right} variables")]
    RingMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("too many variables: {0} (at most {max})", max = crate::monomial::MAX_VARS)]
    TooManyVariables(usize),

    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("delta is undefined on forms of total degree 0")]
    ZeroDegree,

    #[error("coordinate vector mixes Tor degrees {0} and {1}")]
    MixedDegrees(i32, i32),

    #[error("resolution is not minimal")]
    NotMinimal,

    #[error("maps do not compose to zero")]
    NotAComplex,

    #[error("form does not descend to projective space (contraction with the radial field is nonzero)")]
    DoesNotDescend,

    #[error("form is not locally decomposable off its singular set")]
    NotLds,

    #[error("linear strand shortcut needs (I)_{0} = 0")]
    LinearStrandInvalid(i32),

    #[error("Chern class computation produced a non-integral value: {0}")]
    NonIntegralChern(String),

    #[error("unsupported ambient space P^{0} (only P^3 is supported here)")]
    UnsupportedAmbient(usize),

    #[error("the space of candidate forms is empty")]
    EmptySpace,

    #[error("retry budget exhausted: {0}")]
    RetryBudgetExhausted(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
