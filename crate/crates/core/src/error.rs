use thiserror::Error;

use crate::graph::Edge;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("edge ({}, {}) is not in the graph", .0.0, .0.1)]
    MissingEdge(Edge),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({}, {})", .0.0, .0.1)]
    DuplicateEdge(Edge),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("coloring is partial: edge ({}, {}) has no color", .0.0, .0.1)]
    PartialColoring(Edge),

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("enumeration limit of {0} good colorings exceeded")]
    LimitExceeded(u64),

    #[error("pre-colored edges already contain a forbidden monochromatic path")]
    InconsistentFixed,

    #[error("longest path from vertex {vertex} has more than {cap} vertices")]
    CapExceeded { vertex: usize, cap: usize },

    #[error("graph is not preprocessed: a removal rule still applies at vertex {0}")]
    NotPreprocessed(usize),

    #[error("construction not reconstructed: {0}")]
    NotReconstructed(String),

    #[error("good coloring outside the critical-coloring taxonomy: {0}")]
    TaxonomyViolation(String),

    #[error("composition would create a parallel edge ({}, {})", .0.0, .0.1)]
    NonSimpleComposition(Edge),

    #[error("{0} variables exceeds the brute-force limit of {1}")]
    TooManyVariables(usize, usize),

    #[error("variable gadget has too few {role} ports for variable {variable}")]
    PortsExhausted { variable: usize, role: &'static str },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
