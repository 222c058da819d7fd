use alloc::string::String;
use alloc::vec::Vec;

use crate::graded::Violation;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("invalid graded map: {}", join_violations(.0))]
    InvalidMap(Vec<Violation>),
    #[error("{0}")]
    DomainError(String),
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("boundary does not square to zero (nonzero on generator `{generator}`)")]
    NotAChainComplex { generator: String },
    #[error("connecting map does not commute with the boundary (on generator `{generator}`)")]
    NotAChainMap { generator: String },
    #[error("wrong coefficient ring: {0}")]
    WrongRing(String),
    #[error("window covers {len} degrees but one period needs {period}")]
    WindowTooSmall { len: i64, period: i64 },
    #[error("operation needs a periodic (Laurent) grading")]
    NotPeriodic,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn join_violations(v: &[Violation]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push_str("; ");
        }
        let _ = write!(s, "{x}");
    }
    s
}
