use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid modulus {0}: every cyclic factor must have order at least 2")]
    InvalidModulus(usize),

    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },

    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("operands belong to different groups ({left} vs {right})")]
    GroupMismatch { left: String, right: String },

    #[error("set is not a subgroup")]
    NotSubgroup,

    #[error("set must be nonempty")]
    EmptySet,

    #[error("set must contain 0")]
    MissingZero,

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("group is not cyclic")]
    NotCyclic,

    #[error("set is not {k}-separable")]
    NotSeparable { k: usize },

    #[error("exact search exceeded budget of {budget} node visits")]
    BudgetExceeded { budget: u64 },

    #[error("universe of {size} elements is too large for exact search (limit {limit})")]
    UniverseTooLarge { size: usize, limit: usize },

    #[error("set is not a {k}-atom")]
    NotAtom { k: usize },

    #[error("no Sidon 4-set containing 0 exists in Z/{q}")]
    NoSidonSet { q: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown statement id `{0}`")]
    UnknownStatement(String),

    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
