use thiserror::Error;

/// Errors raised by policy construction and the divergence/bound routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("policy has no outcomes")]
    EmptyPolicy,

    #[error("outcomes {first:?} and {second:?} share reward {reward}; rewards must be distinct")]
    DuplicateReward { first: String, second: String, reward: f64 },

    #[error("outcome {id:?} has non-positive or non-finite probability {prob}")]
    NonPositiveProb { id: String, prob: f64 },

    #[error("outcome {id:?} has non-finite reward {reward}")]
    NonFiniteReward { id: String, reward: f64 },

    #[error("probabilities sum to {sum}, expected 1 within {tolerance:e}")]
    ProbSumMismatch { sum: f64, tolerance: f64 },

    #[error("outcome id {0:?} appears more than once")]
    DuplicateOutcomeId(String),

    #[error("jitter must be finite and positive, got {0}")]
    InvalidJitter(f64),

    #[error("Renyi order must be positive and different from 1, got {0}")]
    InvalidAlpha(f64),

    #[error("argument {0} outside [0, 1]")]
    OutOfRange(f64),

    #[error("sample count n must be at least 1")]
    InvalidN,

    #[error("number of Monte Carlo samples must be at least 1")]
    InvalidSampleCount,

    #[error("delta must lie in (0, 1], got {0}")]
    InvalidDelta(f64),

    #[error("epsilon must lie in (0, 1], got {0}")]
    InvalidEps(f64),

    #[error("interval [{a}, {b}] is not a valid 0 <= a < b <= 1 interval")]
    InvalidInterval { a: f64, b: f64 },

    #[error("context ensemble is empty")]
    EmptyEnsemble,

    #[error("context id {0:?} appears more than once")]
    DuplicateContextId(String),

    #[error("context {id:?} has invalid weight {weight}")]
    InvalidContextWeight { id: String, weight: f64 },

    #[error("context weights sum to {0}, expected 1")]
    ContextWeightMismatch(f64),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("report invariant violated at n = {n}: {what}")]
    InvariantViolation { n: u64, what: String },
}

impl Error {
    /// True for errors caused by malformed input data (files, tables) rather
    /// than by an out-of-domain argument to a numeric routine.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::EmptyPolicy
                | Error::DuplicateReward { .. }
                | Error::NonPositiveProb { .. }
                | Error::NonFiniteReward { .. }
                | Error::ProbSumMismatch { .. }
                | Error::DuplicateOutcomeId(_)
                | Error::InvalidJitter(_)
                | Error::EmptyEnsemble
                | Error::DuplicateContextId(_)
                | Error::InvalidContextWeight { .. }
                | Error::ContextWeightMismatch(_)
                | Error::Parse { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
