use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{a} is not invertible modulo {n}")]
    NotInvertible { a: i128, n: u64 },
    #[error("bad modulus {0}: expected an odd positive integer")]
    BadModulus(i128),
    #[error("bad prime {0}: {1}")]
    BadPrime(u64, &'static str),
    #[error("modulus {modulus} exceeds the exhaustive-scan cap {cap}")]
    ModulusTooLarge { modulus: u64, cap: u64 },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("degenerate quadratic pair: {0}")]
    DegeneratePair(&'static str),
    #[error("box half-width {m} exceeds the scan cap {cap}")]
    BoxTooLarge { m: u32, cap: u32 },
    #[error("evaluation needs {needed} terms, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("method unavailable: {0}")]
    MethodUnavailable(String),
    #[error("d={d} and q={q} are not built from the same primes")]
    SupportMismatch { d: u64, q: u64 },
    #[error("gcd({d}, Delta_V) > 1")]
    NotCoprimeToDiscriminant { d: u64 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unsupported weight: {0}")]
    UnsupportedWeight(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("invalid linear system: {0}")]
    InvalidLinearSystem(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Budget-type failures, as opposed to validation failures.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::ModulusTooLarge { .. } | Error::BoxTooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
