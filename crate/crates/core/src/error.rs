use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Evaluation outside a validity interval, or a singular intermediate.
    #[error("domain error: {0}")]
    Domain(String),

    /// The first fundamental form is (numerically) singular.
    #[error("degenerate surface at (s={s}, t={t}): EG-F^2={det}")]
    Degenerate { s: f64, t: f64, det: f64 },

    /// A Lorentzian causal constraint does not hold at the point.
    #[error("causality violated at (s={s}, t={t}): {detail}")]
    Causality { s: f64, t: f64, detail: String },

    #[error("every grid node is degenerate ({skipped} skipped)")]
    AllDegenerate { skipped: usize },

    #[error("singularity: {0}")]
    Singularity(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// An invalid specification; `key` names the offending field or parameter.
    #[error("invalid `{key}`: {detail}")]
    Spec { key: String, detail: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn spec(key: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Spec {
            key: key.into(),
            detail: detail.into(),
        }
    }

    /// True for errors that mark a single grid node as unusable.
    pub fn is_node_local(&self) -> bool {
        matches!(self, Error::Degenerate { .. } | Error::Causality { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
