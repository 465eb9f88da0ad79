use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("factor at position {position} has order 0")]
    ZeroFactorOrder { position: usize },

    #[error("cannot factorize 0")]
    ZeroInput,

    #[error("{bits}-bit input exceeds the factorization limit of {max_bits} bits")]
    TooLarge { bits: u64, max_bits: u64 },

    #[error("factorization of {value} did not finish within the time budget")]
    FactorBudgetExhausted { value: String },

    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),

    #[error("invalid exponent list {0:?}: expected a nonempty ascending list of positive exponents")]
    InvalidExponents(Vec<u32>),

    #[error("{what} requires {needed} iterations, budget is {budget}")]
    BudgetExceeded { what: &'static str, needed: String, budget: u64 },

    #[error("{what} has size {size}, cap is {cap}")]
    CapExceeded { what: &'static str, size: String, cap: u64 },

    #[error("element {0:?} does not belong to the group")]
    InvalidElement(Vec<u64>),

    #[error("power map does not match the group: {0}")]
    InvalidPowerMap(String),

    /// An exact division guaranteed by the counting identity came out inexact.
    /// Never caused by valid input.
    #[error("internal invariant violated: {numerator} is not divisible by {denominator}")]
    InexactDivision { numerator: String, denominator: String },
}

impl Error {
    /// True for the budget and cap family of errors.
    pub fn is_limit(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. }
                | Error::CapExceeded { .. }
                | Error::FactorBudgetExhausted { .. }
                | Error::TooLarge { .. }
        )
    }
}
