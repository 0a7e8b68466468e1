use thiserror::Error;

/// Errors raised by constructors, parsers and algorithms in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: expected {expected} entries, found {found}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("symbol {symbol} repeats in row {row}")]
    RowRepeat { row: usize, symbol: String },
    #[error("symbol {symbol} repeats in column {col}")]
    ColumnRepeat { col: usize, symbol: String },
    #[error("{found} distinct symbols exceed the order {order}")]
    TooManySymbols { found: usize, order: usize },
    #[error("a {rows}x{cols} rectangle does not fit in order {order}")]
    RectangleTooLarge {
        rows: usize,
        cols: usize,
        order: usize,
    },
    #[error("entry {value} at ({row}, {col}) is outside 0..{order}")]
    SymbolOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("input is empty")]
    Empty,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("expected a square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("order {order} exceeds the supported maximum of {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("order {order} is below the minimum of {min}")]
    OrderTooSmall { order: usize, min: usize },
    #[error("matrix is not doubly stochastic: {0}")]
    NotDoublyStochastic(String),
    #[error("matrix is not regular: {0}")]
    NotRegular(String),
    #[error("invalid cube: {0}")]
    InvalidCube(String),
    #[error("invalid transversal: {0}")]
    InvalidTransversal(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("invalid orthogonal system: {0}")]
    InvalidSystem(String),
    #[error("invalid schema: {0}")]
    InvalidSchema(String),
    #[error("not a projective plane of order {0}")]
    NotAPlane(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("construction does not apply: {0}")]
    NotApplicable(String),
    #[error("square is not symmetric")]
    NotSymmetric,
    #[error("order {0} is even")]
    EvenOrder(usize),
    #[error("rectangle cannot be completed: {0}")]
    NotCompletable(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
