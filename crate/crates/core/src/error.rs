use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {vertex_count} vertices")]
    InvalidVertex { vertex: usize, vertex_count: usize },

    #[error("edge {edge} out of range for a graph with {edge_count} edges")]
    InvalidEdge { edge: usize, edge_count: usize },

    #[error("graph is not connected ({components} components)")]
    Disconnected { components: usize },

    #[error("graph has loop edge {edge}; {hint}")]
    LoopPresent { edge: usize, hint: &'static str },

    #[error("edge {edge} is a loop")]
    EdgeIsLoop { edge: usize },

    #[error("edge {edge} is a bridge")]
    EdgeIsBridge { edge: usize },

    #[error("root set must be nonempty")]
    EmptyRoots,

    #[error("edge set is not a spanning forest: {0}")]
    NotSpanningForest(String),

    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("{what} exceeds guard: {actual} > {limit}")]
    GuardExceeded { what: &'static str, actual: u128, limit: u128 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("coefficient denominator divisible by {0}")]
    DenominatorDivisible(u64),

    #[error("point has {actual} coordinates, polynomial has {expected} variables")]
    PointArity { expected: usize, actual: usize },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("{0}")]
    Domain(String),

    #[error("double complex invariant violated at ({p},{q}): {what}")]
    ComplexInvariant { p: usize, q: usize, what: String },

    #[error("parse error: {0}")]
    Parse(String),
}
