use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the evaluation, sum and OEIS layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} is negative but t = 0, so the recurrence cannot be run backward")]
    NegativeIndexWithZeroT { index: i64 },

    #[error("backward sums start at k = 1; n must be at least 1 (got {n})")]
    EmptyBackwardSum { n: u64 },

    #[error("formula {case} does not apply to these parameters")]
    FormulaNotApplicable { case: &'static str },

    #[error("{case} gave {closed_form} but the term-by-term sum is {oracle}")]
    OracleMismatch {
        case: &'static str,
        closed_form: String,
        oracle: String,
    },

    #[error("unknown sequence `{0}`")]
    UnknownSequence(String),

    #[error("malformed rational literal `{0}` (expected `p` or `p/q`)")]
    MalformedRational(String),

    #[error("malformed b-file at line {line}: {reason}")]
    MalformedBFile { line: usize, reason: String },

    #[error("no fixture for {oeis_id} at {}", path.display())]
    FixtureMissing { oeis_id: String, path: PathBuf },

    #[error("fetching {oeis_id} failed: {reason}")]
    FetchFailed { oeis_id: String, reason: String },

    #[error("invalid OEIS id `{0}`")]
    InvalidOeisId(String),
}

pub type Result<T> = std::result::Result<T, Error>;
