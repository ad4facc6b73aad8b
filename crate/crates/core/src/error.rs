use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no edges")]
    EmptyInput,

    #[error("vertex {vertex} out of range (graph has {vertex_count} vertices)")]
    VertexOutOfRange { vertex: u64, vertex_count: usize },

    #[error("clique id {id} out of range (set has {count} cliques)")]
    CliqueOutOfRange { id: u64, count: usize },

    #[error("unsupported clique size r={0}; only 1, 2 and 3 are supported")]
    UnsupportedCliqueSize(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("{count} r-cliques exceeds the exhaustive-search cap of {cap}")]
    TooLarge { count: usize, cap: usize },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
