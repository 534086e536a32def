use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("inadmissible root system {family}{rank}: {reason}")]
    InadmissibleType {
        family: char,
        rank: usize,
        reason: &'static str,
    },
    #[error("letter s{letter} out of range for rank {rank} (letters are 0..={rank})")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("word is empty")]
    EmptyWord,
    #[error("probability {0} outside the admissible range")]
    ProbabilityOutOfRange(String),
    #[error("{what}: {needed} exceeds budget {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },
    #[error("word must contain s0 exactly once, found {0} occurrences")]
    S0Count(usize),
    #[error("elements belong to different root systems")]
    MixedRootSystems,
    #[error("subset position {position} out of range 1..={len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("sigma2 must be non-negative, got {0}")]
    NegativeVariance(String),
    #[error("first-passage excursion exceeded {0} periods without returning")]
    Watchdog(u64),
    #[error("linear system is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
