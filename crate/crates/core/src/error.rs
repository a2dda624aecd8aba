use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left_rows}x{left_cols} incompatible with {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("length mismatch: expected {expected} bits, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("matrix dimensions {rows}x{cols} invalid (rows and cols must be in 1..={max})", max = crate::bitmatrix::MAX_DIM)]
    InvalidDimensions { rows: usize, cols: usize },

    #[error("operation requires a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("cannot parse bit matrix: {0}")]
    ParseMatrix(String),

    #[error("rule number {0} out of range 0..=511")]
    RuleOutOfRange(u16),

    #[error("{0} is not a fundamental rule")]
    NotFundamental(u16),

    #[error("layout construction for fundamental rule {rule} ({boundary} {m}x{n}) disagrees with the neighborhood oracle")]
    ConstructionMismatch {
        rule: u16,
        boundary: crate::rules::Boundary,
        m: usize,
        n: usize,
    },

    #[error("closure exceeded the cap of {cap} elements")]
    ClosureOverflow { cap: usize },

    #[error("element {index} out of range for a closure of order {order}")]
    NoSuchElement { index: usize, order: usize },

    #[error("element {index} has no inverse in the closure")]
    NoInverse { index: usize },

    #[error("translation exponents ({a},{b}) out of range for a {m}x{n} torus")]
    TranslationOutOfRange { a: usize, b: usize, m: usize, n: usize },

    #[error("state space 2^{cells} too large to enumerate (limit 2^{limit})")]
    StateSpaceTooLarge { cells: usize, limit: usize },

    #[error("rule {rule} at {m}x{n} is not a multiple-attractor rule")]
    NotMaca { rule: u16, m: usize, n: usize },

    #[error("degenerate key: rule {rule} at {m}x{n} has a single attractor, nothing to encode")]
    DegenerateKey { rule: u16, m: usize, n: usize },

    #[error("PEF length mismatch: profile expects {expected} bits, got {found}")]
    PefLengthMismatch { expected: usize, found: usize },

    #[error("{what} = {value} does not fit the container header (max {max})")]
    HeaderOverflow {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("malformed container: {0}")]
    ContainerFormat(String),

    #[error("container does not match the key: {0}")]
    KeyMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
