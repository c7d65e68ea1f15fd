use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("negative scalar {0} cannot scale an intuitionistic pair")]
    NegativeLambda(f64),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("cannot combine {left} with {right}")]
    TypeMismatch {
        left: &'static str,
        right: &'static str,
    },
    #[error("hesitant elements have different cardinalities ({left} vs {right})")]
    CardinalityMismatch { left: usize, right: usize },
    #[error("invalid G-type value: {0}")]
    InvalidValue(String),
    #[error("higher-order hesitant element must contain at least one value")]
    EmptyElement,
    #[error("no weighted terms to combine")]
    EmptyTerms,
    #[error("aggregation produced an empty element (all marginal weights are zero)")]
    EmptyAggregate,
    #[error("strict-uniform policy requires one variant, found {first} and {other}")]
    MixedTypes {
        first: &'static str,
        other: &'static str,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("measure table has no entry for subset {0}")]
    MissingSubset(String),
    #[error("measure table lists subset {0} more than once")]
    DuplicateSubset(String),
    #[error("bad boundary value: {0}")]
    BadBoundary(String),
    #[error(
        "monotonicity violated: mu({subset}) = {subset_value} > mu({superset}) = {superset_value}"
    )]
    MonotonicityViolation {
        subset: String,
        superset: String,
        subset_value: f64,
        superset_value: f64,
    },
    #[error("measure value {value} for subset {subset} is outside [0, 1]")]
    ValueOutOfRange { subset: String, value: f64 },
    #[error("rho-rule measure is not normalized: mu(X) = {0}")]
    NotNormalized(f64),
    #[error("no normalizing rho exists in the search bracket")]
    NoRoot,
    #[error("at most {max} criteria are supported, found {found}")]
    TooManyCriteria { max: usize, found: usize },
    #[error("{0:?} is not a permutation of the criterion indices")]
    InvalidPermutation(Vec<usize>),
    #[error(
        "intuitionistic pair at criterion {criterion} received negative marginal weight {weight}"
    )]
    NegativeWeightUnsupported { criterion: usize, weight: f64 },
    #[error("ranking orders are over different alternative sets ({0})")]
    LabelMismatch(String),
    #[error("invalid ranking order: {0}")]
    InvalidOrder(String),
    #[error("collective relation is not a total order: {0}")]
    NotATotalOrder(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code, used in structured CLI output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NegativeLambda(_) => "NEGATIVE_LAMBDA",
            Error::OutOfRange(_) => "OUT_OF_RANGE",
            Error::TypeMismatch { .. } => "TYPE_MISMATCH",
            Error::CardinalityMismatch { .. } => "CARDINALITY_MISMATCH",
            Error::InvalidValue(_) => "INVALID_VALUE",
            Error::EmptyElement => "EMPTY_ELEMENT",
            Error::EmptyTerms => "EMPTY_TERMS",
            Error::EmptyAggregate => "EMPTY_AGGREGATE",
            Error::MixedTypes { .. } => "MIXED_TYPES",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::MissingSubset(_) => "MISSING_SUBSET",
            Error::DuplicateSubset(_) => "DUPLICATE_SUBSET",
            Error::BadBoundary(_) => "BAD_BOUNDARY",
            Error::MonotonicityViolation { .. } => "MONOTONICITY_VIOLATION",
            Error::ValueOutOfRange { .. } => "VALUE_OUT_OF_RANGE",
            Error::NotNormalized(_) => "NOT_NORMALIZED",
            Error::NoRoot => "NO_ROOT",
            Error::TooManyCriteria { .. } => "TOO_MANY_CRITERIA",
            Error::InvalidPermutation(_) => "INVALID_PERMUTATION",
            Error::NegativeWeightUnsupported { .. } => "NEGATIVE_WEIGHT_UNSUPPORTED",
            Error::LabelMismatch(_) => "LABEL_MISMATCH",
            Error::InvalidOrder(_) => "INVALID_ORDER",
            Error::NotATotalOrder(_) => "NOT_A_TOTAL_ORDER",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::Schema(_) => "SCHEMA_ERROR",
            Error::Validation(_) => "VALIDATION_ERROR",
            Error::Io(_) => "IO_ERROR",
        }
    }
}
