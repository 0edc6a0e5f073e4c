use thiserror::Error;

/// Errors produced anywhere in the crate.
///
/// The CLI maps these onto process exit codes: [`Error::Infeasible`] is 1,
/// [`Error::Invariant`] is 3 and everything else is 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right} (pad explicitly before comparing)")]
    LengthMismatch { left: usize, right: usize },

    #[error("conjugate dimension {dim} is smaller than the largest part {max}")]
    LossyConjugate { dim: usize, max: u64 },

    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("enumeration exceeded the cap of {cap}")]
    CapExceeded { cap: u64 },

    #[error("instance exceeds the oracle budget: {0}")]
    BudgetExceeded(String),

    #[error("interchange pattern absent at rows ({i}, {j}), columns ({p}, {q})")]
    PatternAbsent { i: usize, j: usize, p: usize, q: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Infeasible(_) => 1,
            Error::Invariant(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::LengthMismatch { left, right })
    }
}
