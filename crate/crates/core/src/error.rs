use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("denominator vanishes at n = {0}")]
    PoleAtValue(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("degree {degree} exceeds the configured cap of {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },

    #[error("work budget exceeded: {products} products > {budget}")]
    BudgetExceeded { products: u64, budget: u64 },

    #[error("partition weights differ: {left} vs {right}")]
    WeightMismatch { left: usize, right: usize },

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid closed double-fan ({m_a},{n_a})({m_b},{n_b}): m_a + m_b != n_a + n_b")]
    InvalidClosedGraph {
        m_a: u32,
        n_a: u32,
        m_b: u32,
        n_b: u32,
    },

    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: String, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            column,
            message: message.into(),
        }
    }

    /// True for the errors that mean "too expensive", as opposed to bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::DegreeTooLarge { .. } | Error::BudgetExceeded { .. }
        )
    }
}
