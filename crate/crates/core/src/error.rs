use thiserror::Error;

/// Errors raised by the algebra, word and invariant layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mismatched context: {0}")]
    MismatchedContext(String),

    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,

    #[error("series constant term is not 1")]
    ConstantTermNotOne,

    #[error("not a Lie element (primitivity fails in degree {degree})")]
    NotALieElement { degree: usize },

    #[error("generator index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("line {line}: syntax error at token `{token}`: {reason}")]
    Syntax {
        line: usize,
        token: String,
        reason: String,
    },

    #[error(
        "line {line}: crossing position {position} out of range 1..={max} for {strands} strands"
    )]
    PositionOutOfRange {
        line: usize,
        position: usize,
        max: usize,
        strands: usize,
    },

    #[error(
        "line {line}: word is not pure (strand permutation {permutation:?} is not the identity)"
    )]
    NotPure {
        line: usize,
        permutation: Vec<usize>,
    },

    #[error("word has {0} double points; a non-singular word is required")]
    HasDoublePoints(usize),

    #[error("word has no double points")]
    NoDoublePoints,

    #[error("expected exactly {expected} double points, found {found}")]
    WrongDoubleCount { expected: usize, found: usize },

    #[error("invalid degree {degree}: {reason}")]
    InvalidDegree { degree: usize, reason: String },

    #[error("alternating sum is nonzero in degree {degree} < {bound} (component {component})")]
    LowerDegreeNonvanishing {
        degree: usize,
        bound: usize,
        component: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
