use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the toolkit reports. Variant names double as the `error`
/// tag in machine-readable reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field error: {0}")]
    Field(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("generator {0} is not homogeneous")]
    Grading(String),
    #[error("generator {0} has a nonzero constant term")]
    ConstantTerm(String),
    #[error("parameter {value} outside template range {lo}..{hi}")]
    Range { value: i64, lo: i64, hi: i64 },
    #[error("instantiating template at w = {w}: {source}")]
    Template { w: i64, source: Box<Error> },
    #[error("quotient dimension {dim} exceeds capacity {limit}")]
    Capacity { dim: usize, limit: usize },
    #[error("operation undefined on the zero ring")]
    ZeroRing,
    #[error("tuple does not generate a primary ideal to the maximal ideal: {0}")]
    NotPrimary(String),
    #[error("presentation has no deformation tuple")]
    MissingTuple,
    #[error("Hilbert series prefix of length {0} is too short to certify a rational form")]
    PrefixTooShort(usize),
    #[error("pole order zero: {0}")]
    PoleOrderZero(String),
    #[error("window {lo}..{hi} too small: {reason}")]
    WindowTooSmall { lo: usize, hi: usize, reason: String },
    #[error("sequence did not stabilize: {0}")]
    NotStabilized(String),
    #[error("stabilization undecided: {0}")]
    UnknownStabilization(String),
    #[error("delta0 is undefined at nilpotency index one")]
    NilpotencyOne,
    #[error("dimension zero: {0}")]
    DimensionZero(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable tag used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SyntaxError",
            Error::Field(_) => "FieldError",
            Error::FieldMismatch(..) => "FieldMismatchError",
            Error::Grading(_) => "GradingError",
            Error::ConstantTerm(_) => "ConstantTermError",
            Error::Range { .. } => "RangeError",
            Error::Template { .. } => "TemplateError",
            Error::Capacity { .. } => "CapacityError",
            Error::ZeroRing => "ZeroRingError",
            Error::NotPrimary(_) => "NotPrimaryError",
            Error::MissingTuple => "MissingTupleError",
            Error::PrefixTooShort(_) => "PrefixTooShortError",
            Error::PoleOrderZero(_) => "PoleOrderZero",
            Error::WindowTooSmall { .. } => "WindowTooSmall",
            Error::NotStabilized(_) => "NotStabilizedError",
            Error::UnknownStabilization(_) => "UnknownStabilization",
            Error::NilpotencyOne => "NilpotencyOneError",
            Error::DimensionZero(_) => "DimensionZeroError",
            Error::Inconsistency(_) => "InconsistencyError",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
