use thiserror::Error;

/// Errors produced by geometry, construction, counting and I/O routines.
#[derive(Debug, Error)]
pub enum Error {
    /// An integer argument is outside the domain of a closed-form count.
    #[error("domain error: {0}")]
    Domain(String),

    /// The input is too small or malformed for the requested test.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// A predicate value fell inside the dead zone, or points violate
    /// general position.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    /// A crossing predicate was undecidable for a specific pair of edges.
    #[error("degenerate configuration at edge pair ({first}, {second})")]
    DegenerateEdgePair { first: usize, second: usize },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("perturbation failed: {0}")]
    Perturbation(String),

    #[error("sampling failed: {0}")]
    Sampling(String),

    /// A drawing or report document violates its schema.
    #[error("invalid document: {0}")]
    Document(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
