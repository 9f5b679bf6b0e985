use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph construction: {0}")]
    Construction(String),

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported pattern: {0}")]
    UnsupportedPattern(String),

    #[error("size limit exceeded: {what} is {got}, limit {limit}")]
    SizeLimit {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("power iteration did not converge after {iterations} iterations (rho ~ {rho}, residual {residual:e})")]
    NonConvergence {
        iterations: usize,
        rho: f64,
        residual: f64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported family for closed form: {0}")]
    UnsupportedFamily(String),

    #[error("no feasible graph with {m} edges avoiding {forbid}")]
    Infeasible { m: usize, forbid: String },

    #[error("refused: {0}")]
    Refused(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
