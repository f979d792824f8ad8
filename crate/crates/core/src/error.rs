use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order {0} is not prime")]
    NonPrimeOrder(u32),
    #[error("requested {requested} mutually orthogonal squares, at most {max} exist")]
    TooManySquares { requested: u32, max: u32 },
    #[error("square orders differ ({0} vs {1})")]
    OrderMismatch(u32, u32),
    #[error("malformed Latin square: {0}")]
    MalformedSquare(&'static str),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("symbol width mismatch: expected {expected} bits, found {found}")]
    WidthMismatch { expected: u32, found: u32 },
    #[error("symbol {value:#x} does not fit in {width} bits")]
    SymbolOutOfRange { value: u64, width: u32 },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("index map is not a permutation")]
    NotPermutation,
    #[error("invalid parameters: {0}")]
    Parameter(String),
}
