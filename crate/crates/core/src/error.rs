use thiserror::Error;

/// Errors raised while building or parsing a graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("self-loop on vertex `{vertex}` (edge `{edge}`)")]
    SelfLoop { edge: String, vertex: String },
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("unknown colour `{token}` at {location}")]
    UnknownColour { location: String, token: String },
    #[error("schema violation at {location}: {message}")]
    Schema { location: String, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// Errors raised by the algorithms when their preconditions do not hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("endpoints must be distinct")]
    SameEndpoints,
    #[error("need at least two vertices")]
    TooFewVertices,
    #[error("graph is not complete multipartite")]
    NotCompleteMultipartite,
    #[error("graph is not complete bipartite")]
    NotCompleteBipartite,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph is not an extension of an M-closed graph")]
    NotExtensionOfMClosed,
    #[error("vertices `{0}` and `{1}` are not similar")]
    NotSimilar(String, String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("multiplicity of `{0}` must be positive")]
    NonPositiveMultiplicity(String),
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
