use thiserror::Error;

/// Errors surfaced by tensor construction, verification and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("su(n) requires n >= 2, got n = {0}")]
    InvalidRank(usize),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("expected {expected} indices, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("block sizes {blocks:?} do not sum to tensor order {order}")]
    BlockMismatch { blocks: Vec<usize>, order: usize },

    #[error("contraction pairs axes of unequal dimension ({left} vs {right})")]
    ContractionMismatch { left: usize, right: usize },

    #[error("order-{requested} tensor at dimension {dim} needs {components} components (~{bytes} bytes), above the feasibility cap")]
    Infeasible {
        requested: usize,
        dim: usize,
        components: u64,
        bytes: u64,
    },

    #[error("tensor order must satisfy {0}; got m = {1}")]
    BadOrder(&'static str, usize),

    #[error("trace-extracted component has imaginary residue {0:.3e}; phase convention violated")]
    ConventionViolation(f64),

    #[error("epsilon duality is defined only for n = 3, got n = {0}")]
    DualityUndefined(usize),

    #[error("coefficient fit is degenerate: the candidate span vanishes or is numerically singular")]
    DegenerateFit,

    #[error("bilinear sum is not representable in the (lambda, identity) basis: residual {0:.3e}")]
    Decomposition(f64),

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("suite configuration: {0}")]
    Config(String),

    #[error("tensor file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
