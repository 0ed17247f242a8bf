use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("grid parameters out of range: m = {m} (need >= 1), n = {n} (need >= 2)")]
    InvalidGrid { m: u32, n: u32 },

    #[error("unknown vertex id {0}")]
    UnknownVertex(u32),

    #[error("unknown edge id {0}")]
    UnknownEdge(u32),

    #[error("unknown triangle id {0}")]
    UnknownTriangle(u32),

    #[error("unknown generator id {0}")]
    UnknownGenerator(u32),

    #[error("triangle relabeling is not a permutation of 1..={0}")]
    InvalidRelabeling(u32),

    #[error("cycle of length {0} is too short (need at least 3 edges)")]
    CycleTooShort(usize),

    #[error("group order ({points})! = {order} exceeds the coset limit {limit}")]
    GroupOrderLimit {
        points: u32,
        order: String,
        limit: u64,
    },

    #[error("coset table is incomplete")]
    IncompleteTable,

    #[error("generator count mismatch: expected {expected}, found {found}")]
    GeneratorMismatch { expected: usize, found: usize },

    #[error("word {0} does not lie in the kernel")]
    NotInKernel(usize),

    #[error("{budget} budget of {limit} exceeded")]
    BudgetExceeded { budget: &'static str, limit: u64 },

    #[error("letter {0} is outside the rewriting alphabet")]
    AlphabetMismatch(u32),

    #[error("triangle {0} is not a fork (degree-3) node of the dual graph")]
    NotAFork(u32),

    #[error("proof step {step} does not apply: {reason}")]
    InvalidStep { step: usize, reason: String },

    #[error("invalid script: {0}")]
    InvalidScript(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}
