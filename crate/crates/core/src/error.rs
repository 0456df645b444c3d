use thiserror::Error;

use crate::analysis::ClawWitness;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {index} out of range for graph on {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertices {0} and {1} are not adjacent")]
    NotNeighbor(usize, usize),
    #[error("clique number {0} is below the supported minimum of 2")]
    OmegaTooSmall(usize),
    #[error("clique number {0} is not supported by this operation")]
    UnsupportedOmega(usize),
    #[error("graph contains an induced claw: {0}")]
    NotClawFree(ClawWitness),
    #[error("no structural outcome applies: {0}")]
    TheoremViolation(String),
    #[error("clique family is not a valid line-graph partition: {0}")]
    InvalidPartition(String),
    #[error("internal bound violation: {0}")]
    InternalBoundViolation(String),
    #[error("strong edge colouring needs more than {0} colours")]
    BudgetExhausted(usize),
    #[error("search exceeded the node limit of {0}")]
    Timeout(u64),
    #[error("not an icosahedron antipodal pairing: {0}")]
    InvalidPairing(String),
    #[error("graph has clique number {0}, expected at most 2")]
    NotSmallOmega(usize),
    #[error("colouring has {got} entries, graph has {expected} vertices")]
    SizeMismatch { expected: usize, got: usize },
    #[error("invalid blow-up sizes: {0}")]
    InvalidSpec(String),
    #[error("random generation budget exhausted after {0} attempts")]
    GenerationExhausted(u64),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}
