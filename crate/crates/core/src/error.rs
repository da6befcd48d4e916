use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid weight k = {0}: must be even with 2 <= k <= {max}", max = crate::MAX_WEIGHT)]
    InvalidWeight(u64),

    #[error("invalid level: {0}")]
    InvalidLevel(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("inconsistent inputs: {0}")]
    InconsistentInputs(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{0} is not a multiple of the Carmichael exponent of {1}")]
    NotPhiMultiple(String, String),

    #[error("failed to split {0} within {1} rounds")]
    FailureToSplit(String, u32),

    #[error("no guess of the sharp invariants produced a verified factorization of {0}")]
    GuessesExhausted(String),

    #[error("oracle cannot answer: {0}")]
    Oracle(String),
}
