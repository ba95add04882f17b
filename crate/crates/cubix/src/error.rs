use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("element is not a unit of the group ring")]
    NotAUnit,
    #[error("element is not {arity}-cubic: condition {condition} fails")]
    NotCubic { arity: usize, condition: String },
    #[error("augmentation must be 1 for a normalized unit")]
    AugmentationNotOne,
    #[error("arity must be at least {min}, got {got}")]
    ArityTooSmall { min: usize, got: usize },
    #[error("malformed coordinate spec: {0}")]
    MalformedSpec(String),
    #[error("invalid modulus {0}: INTEGERS_MOD requires m >= 2")]
    InvalidModulus(u64),
    #[error("invalid cyclic order {0}: factors must be >= 1")]
    InvalidOrder(u64),
    #[error("enumeration cap exceeded: needed {needed} work units, cap is {cap}")]
    CapExceeded { needed: u128, cap: u128 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("group order overflow")]
    OrderOverflow,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
