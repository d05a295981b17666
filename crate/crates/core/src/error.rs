use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(&'static str),
    #[error("oscillation frequency must be nonzero")]
    ZeroFrequency,
    #[error("tail expansion needs amplitude derivatives, none available")]
    TailUnavailable,
    #[error("{function}: argument {value} outside the supported domain")]
    Domain { function: &'static str, value: f64 },
    #[error("{0} lies on the branch cut (-inf, 0]")]
    BranchCut(String),
    #[error("{repr} representation not valid at X = {x} (limit {limit})")]
    RepresentationRange {
        repr: &'static str,
        x: f64,
        limit: f64,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("support set is empty (flat-only phase has no Taylor support)")]
    EmptySupport,
    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
