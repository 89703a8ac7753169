use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1} variables")]
    RingMismatch(usize, usize),
    #[error("variable index {0} out of range for {1} variables")]
    InvalidIndex(usize, usize),
    #[error("zero polynomial has no valuation")]
    ZeroPolynomial,
    #[error("zero ideal: order is unbounded")]
    ZeroIdeal,
    #[error("empty generator list")]
    EmptyIdeal,
    #[error("arity mismatch: expected {expected} images, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("pullback not divisible by the exceptional coordinate to power {0}")]
    NotDivisible(u64),
    #[error("non-invertible coordinate change")]
    NonInvertible,
    #[error("order chain did not stabilize within {0} steps")]
    OrderCap(usize),
    #[error("divisorial part of the locus is not smooth: {0}")]
    DivisorialPartNotSmooth(String),
    #[error("no generator can be made a coordinate: {0}")]
    NonConvertible(String),
    #[error("max w-ord is zero; t is undefined")]
    ZeroWOrd,
    #[error("monomial object has empty singular locus")]
    EmptySing,
    #[error("too many old boundary divisors for subset enumeration ({0} > {1})")]
    BoundaryCap(usize, usize),
    #[error("threshold overflow while forming a coefficient ideal")]
    ThresholdOverflow,
    #[error("stage cap {0} exceeded")]
    StageCap(usize),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid problem: {0}")]
    Invalid(String),
    #[error("jacobian check failed: {0}")]
    JacobianCheckFailed(String),
    #[error("internal: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
