//! Error type shared by every module of the crate.

use alloc::boxed::Box;
use alloc::string::String;

/// Convenience alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong while building or analysing a game.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Vector or matrix sizes disagree.
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        /// Which argument was wrong.
        context: &'static str,
        /// Size implied by the rest of the input.
        expected: usize,
        /// Size actually supplied.
        found: usize,
    },

    /// A modelling assumption (distinct frequencies, ...) does not hold.
    #[error("assumption violated ({assumption}): {detail}")]
    AssumptionViolation {
        /// Short name of the assumption.
        assumption: &'static str,
        /// What collided or failed.
        detail: String,
    },

    /// Integer arithmetic left the 64-bit range.
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    /// Gaussian elimination met a pivot below the singularity threshold.
    #[error("singular matrix: pivot {pivot:e} at elimination stage {stage}")]
    Singular {
        /// Zero-based elimination column.
        stage: usize,
        /// Largest available pivot magnitude in that column.
        pivot: f64,
    },

    /// The Lyapunov equation has no unique solution because the matrix is
    /// not Hurwitz.
    #[error("stability precondition violated: {0}")]
    StabilityPrecondition(String),

    /// The integrated state stopped being finite.
    #[error("integration diverged at t = {time}")]
    Divergence {
        /// Simulation time of the first non-finite state.
        time: f64,
    },

    /// One run of a frequency sweep failed.
    #[error("sweep run with multiplier {multiplier} failed: {source}")]
    SweepRun {
        /// Frequency multiplier of the failing run.
        multiplier: u32,
        /// Underlying failure.
        source: Box<Error>,
    },
}

impl Error {
    /// `true` for failures of the numerics (singularity, divergence, loss of
    /// stability), `false` for rejected inputs.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Singular { .. } | Error::StabilityPrecondition(_) | Error::Divergence { .. } => {
                true
            }
            Error::SweepRun { source, .. } => source.is_numerical(),
            _ => false,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub(crate) fn check_len(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected,
            found,
        })
    }
}
