use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group order {0} exceeds the supported maximum 2^24")]
    GroupTooLarge(u64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coordinate {value} out of range for modulus {modulus}")]
    CoordinateOutOfRange { value: u64, modulus: u64 },
    #[error("enumeration cap exceeded: v = {v} > {cap}")]
    EnumerationCap { v: usize, cap: usize },
    #[error("variable cap exceeded: {vars} variables > {cap}")]
    VariableCap { vars: usize, cap: usize },
    #[error("dimension cap exceeded: m = {m} > {cap}")]
    DimensionCap { m: usize, cap: usize },
    #[error("group is not an elementary abelian 2-group")]
    NotElementary2Group,
    #[error("number of variables must be even, got {0}")]
    OddArity(usize),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("variable index {index} out of range 1..={max}")]
    VariableOutOfRange { index: usize, max: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("empty set")]
    EmptySet,
    #[error("vectors are linearly dependent")]
    DependentBasis,
    #[error("the first set is not a ({v},{k},{lambda})-difference set")]
    NotADifferenceSet { v: u64, k: u64, lambda: u64 },
    #[error("{0} is not a perfect square")]
    NotPerfectSquare(i64),
    #[error("parameter constraint violated: {0}")]
    Constraint(String),
    #[error("monomial order is not degree-compatible")]
    NotDegreeCompatible,
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
