use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on node '{node}'")]
    SelfLoop { line: usize, node: String },

    #[error("line {line}: weight {value} must be positive")]
    NonPositiveWeight { line: usize, value: f64 },

    #[error("line {line}: node '{node}' already has a weight")]
    DuplicateWeight { line: usize, node: String },

    #[error("node '{0}' has no incident edge, its internal weight would be zero")]
    IsolatedNode(String),

    #[error("unknown node '{0}'")]
    UnknownNode(String),

    #[error("node '{0}' has no weight and full coverage was required")]
    MissingWeight(String),

    #[error("graph is disconnected ({components} components); extract the largest connected component first")]
    Disconnected { components: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("weighted Laplacian requires node weights")]
    MissingWeights,

    #[error("expected a {expected} embedding, got {found}")]
    ModeMismatch { expected: String, found: String },

    #[error("dense routine limited to {cap} nodes, graph has {n}")]
    TooLarge { n: usize, cap: usize },

    #[error("{what} did not converge after {iterations} iterations (worst residual {residual:e})")]
    NotConverged {
        what: &'static str,
        iterations: usize,
        residual: f64,
        /// Best residual reached for each requested pair, when available.
        residuals: Vec<f64>,
    },

    #[error("node '{0}' has a zero embedding vector and cannot be normalized")]
    ZeroRow(String),

    #[error("node '{0}' sits at the center of mass (zero stationary hitting time)")]
    DegenerateNode(String),

    #[error("requested {k} clusters but only {distinct} distinct points")]
    TooManyClusters { k: usize, distinct: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Whether the error comes from a numerical routine rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NotConverged { .. })
    }
}
