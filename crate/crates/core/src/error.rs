use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse group spec {input:?}: {reason}")]
    GroupParse { input: String, reason: String },

    #[error("cannot parse partition {input:?}: {reason}")]
    PartitionParse { input: String, reason: String },

    #[error("malformed group element {residues:?} for group {group}")]
    MalformedElement { group: String, residues: Vec<u64> },

    #[error("partition of {partition} does not match degree {degree}")]
    WeightMismatch { partition: usize, degree: usize },

    #[error("group order {order} exceeds the enumeration envelope of {limit}")]
    EnvelopeExceeded { order: usize, limit: usize },

    #[error("operands belong to different groups ({left} vs {right})")]
    MixedSpec { left: String, right: String },

    #[error("sequence has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("group order {0} is not a prime power")]
    NotPrimePower(usize),

    #[error("sequence is not zero-sum")]
    NotZeroSum,

    #[error("inexact division: {numerator} is not divisible by {denominator} ({context})")]
    InexactDivision {
        numerator: String,
        denominator: String,
        context: &'static str,
    },

    #[error("group matrix is singular at every sampled specialization after {retries} retries")]
    Singular { retries: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("identity {equation} failed: left = {left}, right = {right}")]
    IdentityFailed {
        equation: &'static str,
        left: String,
        right: String,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}
