use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter {t} outside domain [{lo}, {hi}]")]
    Domain { t: f64, lo: f64, hi: f64 },

    #[error("non-finite value in {what} at t = {t}")]
    NonFinite { what: &'static str, t: f64 },

    #[error("contact condition violated at t = {t}: h1*h2' - h1'*h2 = {delta} (must be < 0)")]
    ContactViolation { t: f64, delta: f64 },

    #[error("curve passes through the origin at t = {t}")]
    Singularity { t: f64 },

    #[error("winding on [{t0}, {t1}] not resolved after {steps} steps")]
    Resolution { t0: f64, t1: f64, steps: usize },

    #[error("reeb flow aborted after {} steps: {cause}", partial.states().len().saturating_sub(1))]
    FlowAborted {
        partial: Box<crate::flow::Trajectory>,
        cause: Box<Error>,
    },

    #[error("inconsistent result: {0}")]
    Inconsistent(String),

    #[error("surgery window shape mismatch: {0}")]
    Shape(String),

    #[error("lutz twist construction failed: {0}")]
    Construction(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        found: usize,
    },

    #[error("empty description: {0}")]
    Empty(String),

    #[error("invalid field `{field}`: {reason}")]
    Field { field: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn field(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Field {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn dims(what: impl Into<String>, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            what: what.into(),
            expected,
            found,
        }
    }

    /// Errors caused by malformed or inconsistent input rather than by a
    /// failed computation. The CLI maps these to exit code 2.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Validation(_)
                | Error::DimensionMismatch { .. }
                | Error::Empty(_)
                | Error::Field { .. }
                | Error::Json(_)
                | Error::Domain { .. }
                | Error::Shape(_)
        )
    }
}
