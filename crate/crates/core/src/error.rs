use thiserror::Error;

use crate::simplex::Simplex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("malformed edge list: {0}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("face budget of {budget} exceeded during clique enumeration")]
    BudgetExceeded { budget: usize },
    #[error("vertex {0} is not in the complex")]
    VertexNotFound(u32),
    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),
    #[error("face list is not a clique complex: {0} is a clique of its 1-skeleton but not a face")]
    NotFlag(Simplex),
    #[error("malformed complex JSON: {0}")]
    Json(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CollapseError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("{free} is not a free face of {coface}: {reason}")]
    NotFree {
        free: Simplex,
        coface: Simplex,
        reason: String,
    },
    #[error("{sigma} is not a proper face of {tau}")]
    NotProperFace { sigma: Simplex, tau: Simplex },
    #[error("vertex {apex} is not adjacent to every other vertex of the complex")]
    ApexNotUniversal { apex: u32 },
    #[error("link has {vertices} vertices, more than 2k+1 = {limit}")]
    LinkTooLarge { vertices: usize, limit: usize },
    #[error("cannot lift step ({free}, {coface}) at vertex {vertex}: {reason}")]
    Lift {
        free: Simplex,
        coface: Simplex,
        vertex: u32,
        reason: String,
    },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("certificate fingerprint {expected} does not match complex fingerprint {actual}")]
    FingerprintMismatch { expected: String, actual: String },
    #[error("step {index} is invalid: {reason}")]
    InvalidStep { index: usize, reason: String },
    #[error("replay ends at dimension {actual}, certificate claims {claimed}")]
    FinalDimMismatch { claimed: usize, actual: usize },
    #[error("replay ends at dimension {actual}, above the target {k}")]
    TargetNotReached { k: usize, actual: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConditionError {
    #[error("{facets} facets exceed the brute-force facet bound {bound} and {vertices} vertices exceed the vertex bound {vertex_bound}")]
    OracleBound {
        facets: usize,
        bound: usize,
        vertices: usize,
        vertex_bound: usize,
    },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SamplerError {
    #[error("edge probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("vertex count must be at least 1")]
    EmptyGraph,
    #[error("exponent alpha must be positive, got {0}")]
    Alpha(f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SampleError {
    #[error(transparent)]
    Sampler(#[from] SamplerError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid experiment config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("face list is not downward closed: {0} is missing")]
    NotClosed(Simplex),
    #[error("torsion coefficient {0} does not fit in 64 bits")]
    Overflow(String),
}
