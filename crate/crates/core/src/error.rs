use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{line}:{column}: unknown letter `{name}`")]
    UnknownLetter {
        line: usize,
        column: usize,
        name: String,
    },

    #[error("{line}:{column}: exponent must be at least 1")]
    ZeroExponent { line: usize, column: usize },

    #[error("{line}: duplicate relation for {a}^{k} {b}")]
    DuplicateRelation {
        line: usize,
        a: String,
        k: u64,
        b: String,
    },

    #[error("{line}: raw `rel:` lines cannot be mixed with compiled `ap:`/`exc:` lines")]
    MixedFormat { line: usize },

    #[error("insufficient relations for {a}^k {b}: {reason}")]
    InsufficientRelations {
        a: String,
        b: String,
        reason: String,
    },

    #[error("inconsistent relations for {a}^{k} {b}: expected {expected}, found {found}")]
    Inconsistent {
        a: String,
        b: String,
        k: u64,
        expected: String,
        found: String,
    },

    #[error("exponent {k} of {a}^k {b} is not covered by the action table")]
    Uncovered { a: String, b: String, k: String },

    #[error("no stable action profile for {a}^k * {x} within {window} samples")]
    WindowExhausted { a: String, x: String, window: u64 },

    #[error("exponent {0} is too large for this operation")]
    ExponentTooLarge(String),

    #[error("{0} is already an element of the subsemigroup")]
    AlreadyMember(u64),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("affine image would contain {0}, which is not a positive integer")]
    NonPositiveImage(String),

    #[error("rewriting needs relation {a}^{k} {b}, beyond expansion bound {bound}")]
    BoundExceeded {
        a: String,
        k: String,
        b: String,
        bound: u64,
    },
}
