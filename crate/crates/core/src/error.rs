use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrimeP(u64),
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u32 },
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("field with p={p}, m={m} is too large for table arithmetic")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("variable mismatch: {left} vs {right}")]
    VariableMismatch { left: String, right: String },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("exact division left a nonzero remainder")]
    InexactDivision,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("u-exponent {0} is not divisible by q")]
    NotTwistDivisible(u64),
    #[error("series is zero to its precision; leading term unknown")]
    UnknownLeadingTerm,
    #[error("series have no common nonzero coefficient to compare; raise precision")]
    EmptyOverlap,
    #[error("[0] is undefined")]
    BracketZeroIndex,
    #[error("index must be positive")]
    NonpositiveIndex,
    #[error("weight {w} is not divisible by q-1 = {q_minus_1}")]
    WeightNotEven { w: u64, q_minus_1: u64 },
    #[error("weight {w} is divisible by q-1 = {q_minus_1}; the linear relation does not apply")]
    WeightEven { w: u64, q_minus_1: u64 },
    #[error("denominator did not clear while computing H_{0}")]
    DenominatorNotCleared(u64),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("digit sum {sum} exceeds q-1 = {max}")]
    DigitSumTooLarge { sum: u64, max: u64 },
    #[error("requires q > 2")]
    QTooSmall,
    #[error("tuple depth must be at least 2")]
    DepthTooSmall,
    #[error("root depths differ: {0} vs {1}")]
    RootDepthMismatch(u32, u32),
    #[error("{0} is not a power of p with 1 <= p^M <= q")]
    BadPPower(u64),
    #[error("hypothesis violated: {0}")]
    ConditionViolated(String),
    #[error("a(theta) vanishes; no ratio can be extracted")]
    DegenerateA,
    #[error("requires q = 2")]
    NotCharTwo,
    #[error("unsupported parameters: {0}")]
    UnsupportedParams(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed input: {0}")]
    Parse(String),
}
