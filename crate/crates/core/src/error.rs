use thiserror::Error;

/// Errors raised by the exact-arithmetic pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("series division by a series with zero constant term")]
    DivisionByNonUnit,
    #[error("composition requires an inner series with zero constant term")]
    CompositionConstantTerm,
    #[error("exp requires zero constant term")]
    ExpConstantTerm,
    #[error("log requires constant term 1")]
    LogConstantTerm,
    #[error("reversion requires a series of the form x + O(x^2)")]
    NotRevertible,
    #[error("operator is not MUM (P0 is not a multiple of theta^r)")]
    NotMum,
    #[error("operation requires an operator of order {expected}, got {found}")]
    WrongOrder { expected: usize, found: usize },
    #[error("not convertible to theta form: {0}")]
    NotConvertible(String),
    #[error("need at least {needed} sequence terms, got {got}")]
    InsufficientTerms { needed: usize, got: usize },
    #[error("all-zero sequence has no meaningful annihilator")]
    DegenerateSequence,
    #[error("no annihilator found in the searched grid")]
    GridExhausted,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("unknown catalog id `{0}`")]
    UnknownId(String),
    #[error("catalog entry `{0}` has no coefficient evaluator")]
    NoEvaluator(String),
    #[error("parameters not in the empty-sum tables: {0}")]
    UnknownFamily(String),
    #[error("non-integer entry at index {0}")]
    NonInteger(usize),
    #[error("recurrence leading coefficient vanishes at n = {0}")]
    VanishingLeading(i64),
    #[error("malformed elimination plan: {0}")]
    MalformedPlan(String),
    #[error("modular reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("not checkable: {0}")]
    NotCheckable(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
