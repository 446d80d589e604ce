//! Error type shared across the crate.

use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// The generators span no lattice: omega1 = 0 or omega2/omega1 real.
    #[error("degenerate lattice: {detail}")]
    DegenerateLattice { detail: String },

    /// A series or lattice sum failed to reach its cutoff within its cap.
    #[error("slow convergence in {context}")]
    SlowConvergence { context: &'static str },

    /// Argument too close to a lattice point for a pole-bearing function.
    #[error("argument {point} is {distance:.3e} from the lattice ({context})")]
    TooCloseToPole {
        point: Complex64,
        distance: f64,
        context: String,
    },

    /// Reciprocal of a series that is zero to its truncation order.
    #[error("reciprocal of a zero series")]
    ReciprocalOfZero,

    /// Term-by-term integration would produce a logarithm (u^-1 term present).
    #[error("integration of a series with a u^-1 term")]
    IntegrateLogTerm,

    /// Series exponential needs a series with positive lowest order.
    #[error("series exponential of a series with a constant or pole term")]
    ExpConstantTerm,

    /// Derivative order beyond the supported range.
    #[error("derivative order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: u32, max: u32 },

    /// Matrix or product dimension beyond the supported range.
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    /// Confluence step too large for the family being differenced.
    #[error("step {step:.3e} exceeds the largest safe step {max:.3e}")]
    StepTooLarge { step: f64, max: f64 },

    /// NaN or infinity in a public input.
    #[error("non-finite input in {context}")]
    NonFiniteInput { context: &'static str },

    /// The evaluation backend disagreed with the series oracle at startup.
    #[error("backend self-check failed: {detail}")]
    SelfCheckFailed { detail: String },

    /// Invalid campaign or operation configuration.
    #[error("invalid configuration: {detail}")]
    InvalidConfig { detail: String },
}

impl Error {
    /// Stable machine-readable kind, used in CLI error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegenerateLattice { .. } => "degenerate-lattice",
            Error::SlowConvergence { .. } => "slow-convergence",
            Error::TooCloseToPole { .. } => "too-close-to-pole",
            Error::ReciprocalOfZero => "reciprocal-of-zero",
            Error::IntegrateLogTerm => "integrate-log-term",
            Error::ExpConstantTerm => "exp-constant-term",
            Error::OrderTooLarge { .. } => "order-too-large",
            Error::DimensionTooLarge { .. } => "dimension-too-large",
            Error::StepTooLarge { .. } => "step-too-large",
            Error::NonFiniteInput { .. } => "non-finite-input",
            Error::SelfCheckFailed { .. } => "self-check-failed",
            Error::InvalidConfig { .. } => "invalid-config",
        }
    }
}
