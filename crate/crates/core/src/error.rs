use crate::emptybox::DispersionResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("malformed box: {0}")]
    MalformedBox(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Bad arguments (unknown generator, `k + r > |F|`, empty ranges, ...).
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A mathematical validity condition does not hold; the message quotes
    /// the violated inequality.
    #[error("validity condition violated: {0}")]
    Validity(String),

    #[error("point {0:?} lies outside the stretch domain")]
    Domain(Vec<f64>),

    /// The exact empty-box search ran out of nodes. `best` is the largest
    /// empty box seen so far, a lower bound on the dispersion.
    #[error("node budget of {budget} exhausted (best lower bound so far: {})", best.value)]
    BudgetExhausted { budget: u64, best: Box<DispersionResult> },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
