use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0} (graphs must be simple)")]
    SelfLoop(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "{n} vertices exceeds the enumeration limit of {limit}; \
         exhaustive scans visit 2^n subsets, use a smaller graph"
    )]
    GuardExceeded { n: usize, limit: usize },

    #[error("no connected graph after {attempts} samples for n = {n}, average degree {avg_degree}; raise the average degree")]
    NotConnected { n: usize, avg_degree: f64, attempts: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid instance: {0}")]
    Instance(String),

    #[error("non-finite state at step {step}")]
    NonFinite { step: usize },

    #[error("clamped {amount:e} at step {step}, above the 1e-9 per-step budget")]
    ClampExceeded { step: usize, amount: f64 },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
