use thiserror::Error;

/// Everything that can go wrong while parsing a slope or evaluating a
/// predicate on it. Exceeding the available expansion depth is always an
/// error; no operation falls back to an approximation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("slope syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("partial quotients must be positive integers, found `{0}`")]
    NonPositiveQuotient(String),

    #[error("empty continued fraction expansion")]
    EmptyExpansion,

    #[error("depth {requested} exceeds the available expansion depth {available}")]
    DepthExceeded { requested: usize, available: usize },

    #[error("comparison undecided at depth {depth}; a deeper expansion is required")]
    Undecided { depth: usize },

    #[error("slope must have a_1 >= 2; normalize it first")]
    NotNormalized,

    #[error("{0}")]
    OutOfRange(String),

    #[error("`{0}` is not a factor of the Sturmian language")]
    NotAFactor(String),

    #[error("invalid letter {0:?}; words are over the alphabet {{0,1}}")]
    InvalidLetter(char),

    #[error("empty word")]
    EmptyWord,

    #[error("integer overflow: value does not fit the machine-width coefficient")]
    Overflow,

    #[error("duplicate orbit point {{{0}α}}")]
    DuplicatePoint(i64),

    #[error("scanned prefix of length {have} is too short; at least {need} letters are required")]
    PrefixTooShort { have: usize, need: usize },

    #[error("the three-distance decomposition needs n > a_1 = {a1}, got n = {n}")]
    BelowFirstQuotient { n: u64, a1: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
