use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sequence must contain at least one observation")]
    EmptySequence,

    #[error("observation {value} at index {index} lies outside [0, 1]")]
    OutOfUnitInterval { index: usize, value: f64 },

    #[error("symbol {symbol} at index {index} is not below the alphabet size {alphabet}")]
    SymbolOutOfRange {
        index: usize,
        symbol: usize,
        alphabet: usize,
    },

    #[error("expected {expected} observations")]
    KindMismatch { expected: &'static str },

    #[error("commitment (t = {t}, m = {m}) is infeasible for a sequence of length {n}")]
    InvalidCommitment { t: usize, m: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("protocol violation: {0}")]
    ProtocolViolation(String),

    #[error("predictor reached t = {n} without committing")]
    TotalityViolation { n: usize },

    #[error("source `{0}` cannot be enumerated exactly")]
    NotEnumerable(String),

    #[error("enumeration guard: {0}")]
    EnumerationGuard(String),

    #[error("predictor `{0}` exposes no finite randomness support")]
    MissingSupport(String),

    #[error("{loss} loss cannot score a {payload} prediction")]
    LossMismatch {
        loss: &'static str,
        payload: &'static str,
    },

    #[error("malformed sequence csv: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
