use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableCount { expected: usize, found: usize },

    #[error("polynomial is not divisible by x{}", var + 1)]
    NotDivisible { var: usize },

    #[error("chain length mismatch: {0} vs {1}")]
    ChainLength(usize, usize),

    #[error("flag family supplies orders up to {available}, but order {needed} is required")]
    MissingFlagOrder { needed: usize, available: usize },

    #[error("support index {index} exceeds the number of acted-on polytopes ({m})")]
    SupportOutOfRange { index: usize, m: usize },

    #[error("enumeration budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
