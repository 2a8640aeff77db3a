//! Step-approximation machinery for translate completeness: thresholds,
//! explicit approximants with an exact error identity, dichotomy verdicts,
//! and the annihilator construction for sparse translation sets.

mod agnew;
mod annihilator;
mod verdict;

pub use agnew::{
    agnew_approximant, agnew_error_function, agnew_error_norm, agnew_span_combination,
    agnew_threshold, AgnewPlan, SpanTerm,
};
pub use annihilator::{construct_annihilator, AnnihilatorReport};
pub use verdict::{
    completeness_verdict, CompletenessStatus, CompletenessVerdict, GeneratorFunction, Regime,
    VerdictBasis,
};

use crate::norms::NormError;
use crate::orlicz::OrliczError;
use crate::piecewise::PiecewiseError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CompletenessError {
    #[error("Φ(x)/x → {0} > 0 at zero: the vanishing-ratio regime is required here")]
    WrongRegime(f64),
    #[error("no admissible n found below 2^60")]
    SearchExhausted,
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("no Δ₂ witness attached to Φ (the verdicts assume Φ ∈ Δ₂)")]
    Delta2Unverified,
    #[error("the generator carries no positivity certificate for its transform")]
    CertificateMissing,
    #[error("quadrature failed to converge: {0}")]
    QuadratureFailure(String),
    #[error(transparent)]
    Norm(#[from] NormError),
    #[error(transparent)]
    Orlicz(#[from] OrliczError),
    #[error(transparent)]
    Piecewise(#[from] PiecewiseError),
}
