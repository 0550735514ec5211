use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("color {color} out of range 1..={k}")]
    ColorOutOfRange { color: usize, k: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} exceeds limit ({value} > {limit})")]
    LimitExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("variable universe mismatch: {0}")]
    UniverseMismatch(String),

    #[error("set {0:?} is not independent in the graph")]
    NotIndependent(Vec<usize>),

    #[error("distribution weights sum to {0}, expected 1")]
    WeightsNotNormalized(String),

    #[error("degree {needed} exceeds the available degree {available}")]
    DegreeExceeded { needed: usize, available: usize },

    #[error("coloring degree {cdeg} exceeds {limit}")]
    ColoringDegreeExceeded { cdeg: usize, limit: usize },

    #[error("covering property fails: {0}")]
    CoveringFailure(String),

    #[error("pseudo-expectation is not normalized: value(empty set) = {0}")]
    Unnormalized(String),

    #[error("matrix is not symmetric (entry ({row},{col}) differs by {gap:e})")]
    NonSymmetric { row: usize, col: usize, gap: f64 },

    #[error("degenerate sample: {0}")]
    Degenerate(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn limit(what: &'static str, value: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::LimitExceeded {
            what,
            value: value.into(),
            limit: limit.into(),
        }
    }

    /// Budget or usage problems, as opposed to mathematical failures.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::LimitExceeded { .. }
                | Error::InvalidParameter(_)
                | Error::Parse(_)
                | Error::Io(_)
                | Error::Json(_)
                | Error::UniverseMismatch(_)
                | Error::VertexOutOfRange { .. }
                | Error::ColorOutOfRange { .. }
                | Error::DegreeExceeded { .. }
                | Error::ColoringDegreeExceeded { .. }
        )
    }
}
