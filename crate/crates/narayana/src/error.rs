use std::fmt;

/// Errors produced by sequence generation, decomposition search, and codecs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A sequence term (or an encoded value) left the supported integer range.
    CapacityExceeded { index: usize },
    /// Root finding exhausted its iteration budget without meeting tolerance.
    NonConvergence { iterations: u32 },
    /// Exhaustive decomposition search visited more nodes than the configured cap.
    SearchBudgetExceeded { budget: u64 },
    /// A codeword failed structural validation during decode.
    MalformedCodeword { reason: String },
    /// A strict stream decode found a non-padding residue after the last codeword.
    TrailingGarbage { bit_position: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CapacityExceeded { index } => {
                write!(f, "term {index} exceeds the supported integer range")
            }
            Error::NonConvergence { iterations } => {
                write!(
                    f,
                    "root finding did not converge within {iterations} iterations"
                )
            }
            Error::SearchBudgetExceeded { budget } => {
                write!(
                    f,
                    "decomposition search exceeded its node budget of {budget}"
                )
            }
            Error::MalformedCodeword { reason } => {
                write!(f, "malformed codeword: {reason}")
            }
            Error::TrailingGarbage { bit_position } => {
                write!(f, "trailing garbage in stream at bit {bit_position}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
