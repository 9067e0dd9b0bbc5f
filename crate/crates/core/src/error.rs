use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("graph is disconnected: node {unreachable} is not reachable from node 1")]
    Disconnected { unreachable: usize },

    #[error("could not generate a connected graph after {attempts} attempts")]
    GenerationFailed { attempts: u32 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: edge {i}-{j} {message}")]
    Edge {
        line: usize,
        i: usize,
        j: usize,
        message: String,
    },

    #[error(
        "subset enumeration over n = {n} nodes exceeds the guard of {max_n}; \
         use a closed form or the sampled method (or raise CONSENSUS_MAX_N)"
    )]
    TooLarge { n: usize, max_n: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("singular linear system: {0}")]
    Singular(String),

    #[error("mode {mode} out of range: valid modes are 0..{limit}")]
    ModeRange { mode: usize, limit: usize },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}
