use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("invalid ring descriptor: {0}")]
    InvalidRing(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("element is not a unit: {0}")]
    NotAUnit(String),

    #[error("ring {0} does not have prime characteristic")]
    NotCharacteristicP(String),

    #[error("variable `{0}` has no assigned value")]
    MissingVariable(String),

    #[error("witt vector mismatch: {0}")]
    WittMismatch(String),

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("precision exhausted: need witt length {needed}, have {available}")]
    PrecisionExhausted { needed: usize, available: usize },

    #[error("non-exact division by {divisor} while {context}")]
    NonExactDivision { divisor: String, context: String },

    #[error("iteration guard of {0} steps exceeded")]
    GuardExceeded(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),

    #[error("vector is not in Q: {0}")]
    NotInQ(String),

    #[error("reduction not possible: {0}")]
    ReductionImpossible(String),

    #[error("budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("symbolic size limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}
