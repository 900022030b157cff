use thiserror::Error;

/// Errors produced across graph construction, spectral analysis, measures,
/// bounds and the verification oracles.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge {{{i}, {j}}} has non-positive weight {w}")]
    NonPositiveWeight { i: usize, j: usize, w: f64 },
    #[error("node index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("graph must have at least one node")]
    EmptyGraph,
    #[error("invalid parameters for family `{family}`: {reason}")]
    InvalidFamilyParams { family: String, reason: String },
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("unknown bound `{0}`")]
    UnknownBound(String),
    #[error("unknown graph filter `{0}`")]
    UnknownFilter(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("combinatorial and spectral connectivity disagree (bfs: {bfs}, zero eigenvalues: {zero_modes})")]
    ConnectivityMismatch { bfs: bool, zero_modes: usize },
    #[error("matrix is not a Laplacian: {0}")]
    NotLaplacian(String),
    #[error("symmetric eigensolver failed: {0}")]
    EigensolveFailure(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operation requires an unweighted graph")]
    WeightedNotSupported,
    #[error("operation requires a {expected} SOC network")]
    WrongSocType { expected: &'static str },
    #[error("damping parameter beta must be positive and finite, got {0}")]
    InvalidBeta(f64),
    #[error("invalid node count n = {n}: {reason}")]
    InvalidN { n: usize, reason: String },
    #[error("Lyapunov residual {residual:e} exceeds tolerance {tolerance:e}")]
    LyapunovResidualTooLarge { residual: f64, tolerance: f64 },
    #[error("linear solve failed: singular system")]
    SingularSystem,
    #[error("time step {dt} violates stability guard {limit}")]
    UnstableStep { dt: f64, limit: f64 },
    #[error("invalid simulation config: {0}")]
    InvalidSimConfig(String),
    #[error("enumeration limited to n <= {max}, got {n}")]
    NTooLarge { n: usize, max: usize },
    #[error("edge {{{0}, {1}}} is missing a line parameter")]
    MissingEdgeParameter(usize, usize),
    #[error("invalid line parameter on edge {{{i}, {j}}}: {reason}")]
    InvalidLineParameter { i: usize, j: usize, reason: String },
    #[error("heterogeneous generator damping is not supported")]
    HeterogeneousDamping,
    #[error("topology is not a {0} graph")]
    NotDeclaredEdgeTransitive(String),
    #[error("susceptances differ across edges")]
    UnequalSusceptance,
    #[error("topology is not a tree")]
    NotATree,
    #[error("loss trace {trace} disagrees with weighted-mean form {weighted_mean}")]
    LossMismatch { trace: f64, weighted_mean: f64 },
    #[error("edge-transitive formula {formula} disagrees with trace formula {trace}")]
    EdgeTransitiveMismatch { formula: f64, trace: f64 },
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
