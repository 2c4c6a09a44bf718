use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop pair ({0}, {0}) is not allowed")]
    LoopPair(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),

    #[error("unsupported clique order {0}")]
    UnsupportedOrder(usize),

    #[error("density undefined: vertex {vertex} has {degree} neighbors in that color")]
    UndefinedDensity { vertex: usize, degree: usize },

    #[error("bias undefined: no monochromatic triangles")]
    UndefinedBias,

    #[error("degenerate reference: forced fraction is zero for n = {0}")]
    DegenerateReference(u64),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
