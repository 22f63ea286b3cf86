use thiserror::Error;

/// Errors raised by the library. Axiom violations are not errors; they are
/// reported through [`crate::pmq::ValidationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("norm unavailable: PMQ is not locally finite (cycle {})", .cycle.join(" -> "))]
    NormUnavailable { cycle: Vec<String> },

    #[error("norm is not intrinsic: h({product}) != h({left}) + h({right})")]
    NormNotIntrinsic {
        left: String,
        right: String,
        product: String,
    },

    #[error("PMQ is not augmented: {0}")]
    NotAugmented(String),

    #[error("completion is not conservative: `{0}` and `{1}` lie in the same class")]
    CompletionNotConservative(String, String),

    #[error("truncation overflow: norm {needed} exceeds bound {bound}")]
    TruncationOverflow { needed: usize, bound: usize },

    #[error("closure violation: face of cell {0} missing from the cell set")]
    ClosureViolation(String),

    #[error("size guard exceeded: {count} simplices (limit {limit})")]
    SizeGuardExceeded { count: usize, limit: usize },

    #[error("configuration contains a coarse point")]
    CoarsePointPresent,

    #[error("degenerate cell")]
    DegenerateCell,

    #[error("monotonicity violation: {0}")]
    MonotonicityViolation(String),

    #[error("no base point: {0}")]
    NoBasePoint(String),

    #[error("covering not adapted: {0}")]
    CoveringNotAdapted(String),

    #[error("covering not strip-separated: {0}")]
    CoveringNotStripSeparated(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
