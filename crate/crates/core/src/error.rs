use thiserror::Error;

use crate::structures::Kind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("kind mismatch: expected {expected:?}, found {found:?}")]
    KindMismatch { expected: Kind, found: Kind },

    #[error("signature mismatch: {0:?} vs {1:?}")]
    SignatureMismatch(Vec<usize>, Vec<usize>),

    #[error("position {position} out of range for a structure on {n} vertices")]
    OutOfRange { position: usize, n: usize },

    #[error("positions must be strictly increasing: {0:?}")]
    NotIncreasing(Vec<usize>),

    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error("not an embedding: {0}")]
    NotAnEmbedding(String),

    #[error("morphism endpoints do not match")]
    EndpointMismatch,

    #[error("coloring has {found} entries but the hom-set has {expected}")]
    ColoringMismatch { expected: usize, found: usize },

    #[error("hom-set {0} is empty")]
    EmptyHomSet(&'static str),

    #[error("budget of {budget} exceeded after {reached} items")]
    BudgetExceeded { budget: u64, reached: u64 },

    #[error("arity {arity} exceeds the configured cap {cap}")]
    ArityCap { arity: usize, cap: usize },

    #[error("size {size} exceeds the configured cap {cap}")]
    SizeCap { size: u128, cap: usize },

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("empty tuple")]
    EmptyTuple,

    #[error("unknown index {0}")]
    UnknownIndex(usize),

    #[error("map is not surjective: index {0} has no preimage")]
    NotSurjective(usize),

    #[error("arity clash at index {index}: declared {declared}, source family has {source_arity}")]
    ArityClash { index: usize, declared: usize, source_arity: usize },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
