use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid scoring vector: {0}")]
    InvalidVector(String),
    #[error("duplicate candidate `{0}`")]
    DuplicateCandidate(String),
    #[error("unknown candidate `{0}`")]
    UnknownCandidate(String),
    #[error("candidate index {index} out of range for {m} candidates")]
    CandidateOutOfRange { index: usize, m: usize },
    #[error("relation is cyclic through `{0}`")]
    Cyclic(String),
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("vote {vote} ranks {found} candidates, expected {expected}")]
    SizeMismatch {
        vote: usize,
        found: usize,
        expected: usize,
    },
    #[error("vote {0} is not a total order")]
    NotTotal(usize),
    #[error("rule `{rule}`: {msg}")]
    Rule { rule: String, msg: String },
    #[error("position {pos} out of range 1..={max}")]
    Position { pos: usize, max: usize },
    #[error("eta row {row} has sum |eta| = {sum}, budget is {budget}")]
    EtaBudget { row: usize, sum: u128, budget: u128 },
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("enumeration cap of {0} exceeded")]
    CapExceeded(u64),
    #[error("reduction precondition failed: {0}")]
    Reduction(String),
    #[error("maxpartial precondition {property} failed: {detail}")]
    Precondition { property: u8, detail: String },
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("witness rejected: {0}")]
    Witness(String),
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("generator: {0}")]
    Generator(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }
}
