use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("interval endpoints out of order: {lo} > {hi}")]
    InvertedInterval { lo: String, hi: String },

    #[error("operation needs a nonempty interval union")]
    EmptyUnion,

    #[error("sequence term {index} must lie strictly inside (0, 1), got {value}")]
    TermOutOfRange { index: usize, value: String },

    #[error("sequence spec has no terms")]
    EmptySequence,

    #[error("depth {requested} exceeds the {available} terms of a finite sequence spec")]
    DepthExceedsSpec { requested: usize, available: usize },

    #[error("invalid signature digit {0}; digits are 0..=3")]
    InvalidSignatureDigit(u8),

    #[error("digit set base must be at least 2, got {0}")]
    InvalidBase(i64),

    #[error("digit set must contain at least one digit")]
    EmptyDigitSet,

    #[error("digit {digit} lies outside <{lo}, {hi}> for base {base}")]
    DigitOutOfRange { digit: i64, lo: i64, hi: i64, base: i64 },

    #[error("base mismatch: {0} vs {1}")]
    BaseMismatch(i64, i64),

    #[error("largest gap is undefined for a single-digit set")]
    SingletonDigitSet,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid S-Cantor parameters l={l}, r={r}, p={p}: need l,r >= 1, p > 2, l + r < p")]
    InvalidSCantorParams { l: i64, r: i64, p: i64 },

    #[error("integer overflow while computing depth-{depth} prefixes in base {base}")]
    Overflow { base: i64, depth: usize },

    #[error("membership automaton would explore more than {limit} states")]
    StateSpaceTooLarge { limit: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
