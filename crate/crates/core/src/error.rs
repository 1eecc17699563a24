use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generator index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("root sign test is ambiguous: every coordinate lies within {tol:e} of zero")]
    NumericAmbiguity { tol: f64 },

    #[error("root is not sign-coherent: {coords}")]
    SignIncoherent { coords: String },

    #[error("duplicate or near-coincident roots in inversion set (positions {first} and {second})")]
    DuplicateRoot { first: usize, second: usize },

    #[error("exact arithmetic overflowed i64")]
    Overflow,

    #[error("exact mode requires every m(s,t) in {{2, 3, inf}}")]
    ExactModeUnavailable,

    #[error("root vector has mode or dimension incompatible with the representation")]
    RootMismatch,

    #[error("operands belong to different group contexts")]
    ContextMismatch,

    #[error("ball cap of {cap} elements exceeded at radius {radius}")]
    CapExceeded { cap: usize, radius: usize },

    #[error("epsilon-net needs truncation radius n = {required_n}, but B_n exceeds the ball cap of {cap}")]
    NetTooLarge { required_n: usize, cap: usize },

    #[error("group not finite: balls kept growing past {cap} elements")]
    GroupNotFinite { cap: usize },

    #[error("power iteration did not converge after {iterations} iterations (last estimate {estimate})")]
    NotConverged { iterations: usize, estimate: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// True for failures that signal a bug or a broken mathematical invariant
    /// rather than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::InvariantViolation(_) | Error::SignIncoherent { .. } | Error::DuplicateRoot { .. }
        )
    }
}
