use thiserror::Error;

/// Errors raised by the toolkit.
///
/// `CrossCheck` is special: it means two independent computations that must
/// agree did not, which is either a bug or a genuine mathematical finding.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid dual group: {0}")]
    InvalidGroup(String),

    #[error("group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),

    #[error("invalid parameter ({invariant}): {detail}")]
    InvalidParameter {
        invariant: &'static str,
        detail: String,
    },

    #[error("element does not lie in the Vogan variety")]
    NotInVoganVariety,

    #[error("realization failed: {0}")]
    Realization(String),

    #[error("not a nilpotent element: {0}")]
    NotNilpotent(String),

    #[error("sl2 triple construction failed: {0}")]
    Triple(String),

    #[error("non-integral grading: {0}")]
    NonIntegralGrading(String),

    #[error("orbit enumeration failed: {0}")]
    Enumeration(String),

    #[error("orbit records belong to different gradings")]
    LambdaMismatch,

    #[error("invalid corpus spec: {0}")]
    CorpusSpec(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(invariant: &'static str, detail: impl Into<String>) -> Self {
        Error::InvalidParameter {
            invariant,
            detail: detail.into(),
        }
    }

    /// True for failures caused by the input rather than by the toolkit.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidGroup(_)
                | Error::InvalidParameter { .. }
                | Error::Parse { .. }
                | Error::Field { .. }
                | Error::CorpusSpec(_)
        )
    }
}
