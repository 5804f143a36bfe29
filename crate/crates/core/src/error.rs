use thiserror::Error;

/// Errors raised by the arithmetic kernel, the sequence generators and the
/// verification suite.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotPrime(String),
    #[error("prime {0} exceeds the 64-bit limit; enable big primes explicitly")]
    PrimeTooLarge(String),
    #[error("precision must be at least 1, got {0}")]
    InvalidPrecision(u32),
    #[error("operands live over different primes ({0} vs {1})")]
    ContextMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("result is not determined modulo p")]
    PrecisionExhausted,
    #[error("cannot decide congruence modulo p^{needed}: operand known only modulo p^{known}")]
    InsufficientPrecision { needed: i64, known: i64 },
    #[error("{0} is not a p-adic integer for p = {1}")]
    NotPAdicInteger(String, String),
    #[error("{0} is divisible by p = {1}")]
    BaseDivisibleByP(String, String),
    #[error("Bernoulli number B_{0} has a denominator divisible by p")]
    BernoulliDenominatorDivisibleByP(u64),
    #[error("padic gamma at precision {e} would take p^{e} steps; lower the precision")]
    GammaCostExceeded { e: u32 },
    #[error("{p} is not representable by the form {form}")]
    NotRepresentable { p: u64, form: String },
    #[error("weight (1 - 2k/a) is undefined: a is divisible by p")]
    ZeroParameter,
    #[error("unsupported binomial shift ({0}, {1})")]
    UnsupportedShift(i64, i64),
    #[error("unknown certificate {0}")]
    UnknownCertificate(String),
    #[error("rational function has a pole at the requested point")]
    PoleAtPoint,
    #[error("unknown check {0}")]
    UnknownCheck(String),
    #[error("check {id} is not applicable at p = {p}")]
    NotApplicable { id: String, p: u64 },
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for the errors that a rerun at higher working precision can cure.
    pub fn is_precision(&self) -> bool {
        matches!(
            self,
            Error::PrecisionExhausted | Error::InsufficientPrecision { .. }
        )
    }
}
