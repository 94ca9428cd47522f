use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("representative is not a unit modulo the modulus")]
    InvalidClass,

    #[error("divisor support meets the modulus: {0}")]
    NotCoprime(String),

    #[error("budget exceeded: need {needed}, budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error("no canonical map: {0}")]
    NoCanonicalMap(String),

    #[error("(1 - T) L(T) has a nonzero coefficient at degree {degree}")]
    DegreeBoundViolation { degree: usize },

    #[error("operation requires a nontrivial character")]
    TrivialCharacter,

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("incomplete bundle: {0}")]
    IncompleteBundle(String),

    #[error("carrier prime {prime} too small to lift count (residue {value})")]
    CarrierTooSmall { prime: u64, value: u64 },

    #[error("class {class} has {count} effective divisors of degree one")]
    InjectivityViolation { class: String, count: u64 },

    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("invalid comparison: {0}")]
    InvalidComparison(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("function has a zero or pole at the evaluation point")]
    EvaluationAtSupport,

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("not a group isomorphism: {0}")]
    NotAnIsomorphism(String),
}

impl Error {
    /// Short machine-readable kind, used in structured error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::InvalidInput(_) => "InvalidInput",
            Error::InvalidClass => "InvalidClass",
            Error::NotCoprime(_) => "NotCoprime",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::NoCanonicalMap(_) => "NoCanonicalMap",
            Error::DegreeBoundViolation { .. } => "DegreeBoundViolation",
            Error::TrivialCharacter => "TrivialCharacter",
            Error::NumericalFailure(_) => "NumericalFailure",
            Error::IncompleteBundle(_) => "IncompleteBundle",
            Error::CarrierTooSmall { .. } => "CarrierTooSmall",
            Error::InjectivityViolation { .. } => "InjectivityViolation",
            Error::CarrierMismatch(_) => "CarrierMismatch",
            Error::InvalidComparison(_) => "InvalidComparison",
            Error::InvalidCurve(_) => "InvalidCurve",
            Error::EvaluationAtSupport => "EvaluationAtSupport",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::Parse { .. } => "Parse",
            Error::NotAnIsomorphism(_) => "NotAnIsomorphism",
        }
    }
}
