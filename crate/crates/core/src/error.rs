use thiserror::Error;

/// Errors raised by the engine.
///
/// Variants fall in two groups: domain errors caused by bad input, and
/// invariant violations, which indicate an internal inconsistency (a bug or a
/// malformed surface that slipped past validation). The CLI maps the two
/// groups to different exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("arc multiplicity: arc {id} appears {count} times (expected 2)")]
    ArcMultiplicity { id: i64, count: usize },
    #[error("boundary multiplicity: boundary segment {id} appears {count} times (expected 1)")]
    BoundaryMultiplicity { id: i64, count: usize },
    #[error("repeated side: triangle {triangle} uses edge {edge} more than once")]
    RepeatedSide { triangle: i64, edge: i64 },
    #[error("disconnected gluing: {components} components")]
    Disconnected { components: usize },
    #[error("unknown {what} id {id}")]
    UnknownId { what: &'static str, id: i64 },
    #[error("invalid boundary: {0}")]
    InvalidBoundary(String),
    #[error("unsupported surface profile: {0}")]
    UnsupportedProfile(String),
    #[error("contractible boundary loop")]
    ContractibleBoundaryLoop,
    #[error("index {index} out of range (limit {limit})")]
    OutOfRange { index: usize, limit: usize },
    #[error("degree map does not cover arrow {0}")]
    MissingArrow(usize),
    #[error("degree map is not an admissible cut")]
    NotAdmissible,
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("ambiguous arc sequence: {0} consistent step sequences")]
    AmbiguousArcSequence(usize),
    #[error("not a cycle")]
    NotACycle,
    #[error("not a basis")]
    NotABasis,
    #[error("disconnected quiver")]
    DisconnectedQuiver,
    #[error("not gentle: {0}")]
    NotGentle(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// True for internal assertion failures, false for bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::InvariantViolation(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! ensure_invariant {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::InvariantViolation(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure_invariant;
