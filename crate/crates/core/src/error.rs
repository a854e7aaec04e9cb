use thiserror::Error;

/// Everything that can go wrong inside the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table has wrong shape: expected {expected} entries in {what}, found {found}")]
    TableShape {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("table entry {value} at ({row}, {col}) is out of range for order {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("index 0 is not the identity: table[{row}][{col}] = {value}")]
    NotIdentityAtZero {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("table is not a Latin square: value {value} repeats at ({row}, {col})")]
    NotLatinSquare {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("multiplication is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("{what} needs {required}, budget allows {limit}")]
    BudgetExceeded {
        what: String,
        required: u128,
        limit: u128,
    },
    #[error(
        "subgroup is not normal: conjugating {n} by {g} gives {conjugate}, which lies outside"
    )]
    NotNormal {
        g: usize,
        n: usize,
        conjugate: usize,
    },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("map is not a homomorphism: f({a}*{b}) != f({a})*f({b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("image list has length {found}, expected {expected}")]
    ImageLength { expected: usize, found: usize },
    #[error("image {value} of element {element} is out of range for the target")]
    ImageOutOfRange { element: usize, value: usize },
    #[error("source/target mismatch: {0}")]
    SourceTargetMismatch(String),
    #[error("square does not commute at element {element}")]
    SquareDoesNotCommute { element: usize },
    #[error("unknown descriptor `{0}`")]
    UnknownDescriptor(String),
    #[error("not an action: {0}")]
    NotAnAction(String),
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid word `{word}`: {reason}")]
    InvalidWord { word: String, reason: String },
    #[error("assignment has {found} entries but the word needs {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("presented morphisms can only be used as left morphisms")]
    PresentedOnRight,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
