use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("period of an eventually periodic point must be non-empty")]
    EmptyPeriod,
    #[error("finite point must have at least one symbol; use Point::Empty")]
    EmptyFinite,
    #[error("invalid symbol {0:?}")]
    InvalidSymbol(String),
    #[error("operation requires an infinite point")]
    NotInfinite,
    #[error("invalid window predicate: {0}")]
    InvalidPredicate(String),
    #[error("invalid shift spec: {0}")]
    InvalidSpec(String),
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
    #[error("not a bijection: {0}")]
    NotBijective(String),
    #[error("state space of {0} blocks over truncation {1} does not fit in 64 bits")]
    StateSpaceTooLarge(usize, u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
