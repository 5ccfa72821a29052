use thiserror::Error;

/// Errors raised by graph parsing, the arithmetic layer and the homology
/// pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid edge index {index} (graph has {edges} edges)")]
    InvalidEdge { index: usize, edges: usize },

    #[error("endpoint {endpoint} out of range 1..={vertices}")]
    EndpointOutOfRange { endpoint: usize, vertices: usize },

    #[error("exponent must be nonnegative, got {0}")]
    NegativeExponent(i64),

    #[error("mismatched truncation bounds: {left} vs {right}")]
    MismatchedTruncation { left: usize, right: usize },

    #[error("interpolation needs {needed} distinct points, got {got}")]
    NotEnoughPoints { needed: usize, got: usize },

    #[error("interpolation abscissae are not distinct")]
    DuplicateAbscissa,

    #[error("interpolating polynomial has non-integral coefficients")]
    NonIntegralInterpolant,

    #[error("budget exceeded: {parameter} = {value} exceeds limit {limit}")]
    BudgetExceeded {
        parameter: String,
        value: u64,
        limit: u64,
    },

    #[error("state {sub:#b} is not contained in state {sup:#b}")]
    NotSubstate { sub: u64, sup: u64 },

    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("differential squares to a nonzero map at {0}")]
    NonZeroSquare(String),

    #[error("map is not a chain map: {0}")]
    NotChainMap(String),

    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn budget(parameter: &str, value: impl Into<u64>, limit: impl Into<u64>) -> Self {
        Error::BudgetExceeded {
            parameter: parameter.to_string(),
            value: value.into(),
            limit: limit.into(),
        }
    }
}
