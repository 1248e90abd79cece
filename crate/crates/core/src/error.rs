use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Caller violated a precondition.
    #[error("usage error: {0}")]
    Usage(String),

    /// Values from different rings (or modules of different rank) were combined.
    #[error("ring context mismatch: {0}")]
    RingMismatch(String),

    /// Input text could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// The Gröbner degree cap was exceeded.
    #[error("degree guard: pair of degree {degree} exceeds cap {cap}{}", context.as_ref().map(|c| format!(" ({c})")).unwrap_or_default())]
    DegreeGuard {
        degree: i64,
        cap: i64,
        context: Option<String>,
    },

    /// A computed object failed an internal consistency check.
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl Error {
    /// Attaches a description of the computation that hit the degree cap.
    pub fn with_guard_context(self, ctx: impl Into<String>) -> Self {
        match self {
            Error::DegreeGuard { degree, cap, .. } => Error::DegreeGuard {
                degree,
                cap,
                context: Some(ctx.into()),
            },
            other => other,
        }
    }
}
