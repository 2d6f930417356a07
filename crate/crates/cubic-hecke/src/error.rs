use thiserror::Error;

use crate::braid::BraidWord;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("exponents of a and b must be nonnegative (got a^{ea} b^{eb})")]
    NegativeExponent { ea: i32, eb: i32 },
    #[error("specialization has c = 0")]
    ZeroC,
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: i32, strands: usize },
    #[error("level {0} outside 2..=5")]
    LevelOutOfRange(usize),
    #[error("unknown special element {0:?}")]
    UnknownName(String),
    #[error("generator set {name}: expected {expected} words, found {found}")]
    CountMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("word {word} could not be reduced ({steps} rewrite steps recorded)")]
    IrreducibleWord { word: BraidWord, steps: usize },
    #[error("enumeration did not close: {0}")]
    ClosureFailure(String),
    #[error("integrity check failed: {0}")]
    Integrity(String),
    #[error("specialization unusable: {0}")]
    BadPoint(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
}
