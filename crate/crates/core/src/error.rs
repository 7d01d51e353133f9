use thiserror::Error;

/// Errors raised by the algebra engines and the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("enumeration of {requested} items exceeds the budget of {budget}")]
    BudgetExceeded { requested: String, budget: u64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("coefficients over different fields (q = {0} and q = {1})")]
    FieldMismatch(u32, u32),

    #[error("complexes of different periods ({0} and {1})")]
    PeriodMismatch(u32, u32),

    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("the quiver has a directed cycle")]
    CyclicQuiver,

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid period {0}: must be 0 or at least 3")]
    InvalidPeriod(i64),

    #[error("term is not projective: {0}")]
    NotProjective(String),

    #[error("inconsistent decomposition bookkeeping: {0}")]
    Bookkeeping(String),

    #[error("straightening did not terminate within {0} rewrite steps")]
    NonTermination(usize),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
