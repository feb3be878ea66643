use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("Jacobi identity fails on (e{i}, e{j}, e{k}): residual {residual}")]
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
        residual: String,
    },
    #[error("no value given for parameter `{0}`")]
    MissingParameter(String),
    #[error("index {index} out of range for {n} nodes")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("divisor is not a single term")]
    NotMonomial,
    #[error("cannot substitute g{0}: it occurs with a negative exponent")]
    NegativeExponent(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid involution: {0}")]
    InvalidInvolution(String),
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("no sign given for fixed node {0}")]
    MissingSign(usize),
    #[error("lower central series stabilizes at dimension {0}; algebra is not nilpotent")]
    NotNilpotent(usize),
    #[error("commutator of dimension {0} is not spanned by basis vectors")]
    CommutatorNotBasisSpanned(usize),
    #[error("basis is not nice: {0}")]
    NotNice(String),
    #[error("search too large: {0}")]
    TooLarge(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
