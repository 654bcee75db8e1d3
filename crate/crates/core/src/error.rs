use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("edge list parse error on line {line}: {reason}")]
    EdgeList { line: usize, reason: String },

    #[error("vertex index {index} invalid for graph on {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("vertex {0} listed more than once")]
    DuplicateVertex(usize),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("unknown graph generator `{0}`")]
    UnknownGenerator(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("matrix dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("Jacobi eigensolver did not converge; off-diagonal norm {off_norm:e}")]
    EigenNoConvergence { off_norm: f64 },

    #[error("simplex exhausted its pivot budget ({0} pivots)")]
    LpCycling(usize),

    #[error("linear program is {0}")]
    LpStatus(&'static str),

    #[error("SDP solver stopped with status {status} (primal {primal:e}, dual {dual:e})")]
    SdpNotConverged {
        status: &'static str,
        primal: f64,
        dual: f64,
    },

    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("decomposition does not resolve the identity (max deviation {max_deviation:e})")]
    InvalidDecomposition { max_deviation: f64 },

    #[error("cover weight at vertex {vertex} is {weight}, expected 1")]
    InvalidCover { vertex: usize, weight: f64 },
}
