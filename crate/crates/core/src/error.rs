use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported root-of-unity order {0} (expected a power of two between 2 and 64)")]
    UnsupportedOrder(u64),
    #[error("cannot move a level-{from} value down to level {to}")]
    LevelTooLow { from: u8, to: u8 },
    #[error("root-of-unity orders differ: {0} vs {1}")]
    MismatchedOrder(u32, u32),
    #[error("polynomial rings differ: {0} vs {1} variables")]
    RingMismatch(usize, usize),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("invalid monomial matrix: {0}")]
    InvalidMonomial(String),
    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("unknown generator symbol `{0}`")]
    UnknownGenerator(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
