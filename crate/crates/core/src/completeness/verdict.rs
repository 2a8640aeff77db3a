//! Completeness-of-translates verdicts.
//!
//! Two regimes, split on lim Φ(x)/x at zero. With a positive limit the space
//! embeds in L¹ and completeness is equivalent to the transform never
//! vanishing (Wiener-type criterion); the verdict is decided by certified
//! transform zeros or closed-form positivity certificates. With a vanishing
//! limit, translates of a single step are complete; everything else is out
//! of the proven scope and reported as unknown.

use super::CompletenessError;
use crate::orlicz::{GrowthClass, OrliczFunction};
use crate::piecewise::{zero_scan, CatalogFunction, PiecewiseFunction};

/// What the verdict engine accepts as a generator.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorFunction {
    Piecewise(PiecewiseFunction),
    Catalog(CatalogFunction),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// lim Φ(x)/x > 0 at zero: L^Φ ⊆ L¹, Wiener-type criterion applies.
    RatioPositive,
    /// lim Φ(x)/x = 0 at zero: step-function completeness applies.
    RatioZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletenessStatus {
    Complete,
    NotComplete,
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub enum VerdictBasis {
    /// A certified transform zero (kills completeness in the positive regime).
    WienerZeroFound { zero: f64 },
    /// Closed-form positivity of the transform (catalog kinds only).
    WienerPositivityCertificate,
    /// The generator is a positive multiple of a single step.
    StepFunctionTheorem,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompletenessVerdict {
    pub status: CompletenessStatus,
    pub basis: VerdictBasis,
    pub regime: Regime,
}

fn is_positive_step(f: &PiecewiseFunction) -> bool {
    f.segments().len() == 1 && f.segments()[0].slope == 0.0 && f.segments()[0].intercept > 0.0
}

/// Frequency window sized so the first zero-lattice points of a step of this
/// support width fall well inside the scan.
fn scan_range_for(f: &PiecewiseFunction) -> (f64, f64) {
    let width = f.support().map(|(l, r)| r - l).unwrap_or(1.0);
    let r = (8.0 * std::f64::consts::PI / width).max(20.0);
    (-r, r)
}

/// Decide completeness of span{τ_λ f}_{λ∈ℝ} in L^Φ(ℝ).
///
/// Requires a Δ₂ witness in `growth` (the verdicts assume Φ ∈ Δ₂). Verdicts
/// are conservative: `Unknown` whenever neither a certified zero nor a
/// closed-form certificate applies.
pub fn completeness_verdict(
    _phi: &OrliczFunction,
    growth: &GrowthClass,
    f: &GeneratorFunction,
) -> Result<CompletenessVerdict, CompletenessError> {
    if growth.delta2_witness().is_none() {
        return Err(CompletenessError::Delta2Unverified);
    }
    let regime = if growth.limit_ratio_at_zero > 0.0 {
        Regime::RatioPositive
    } else {
        Regime::RatioZero
    };

    match regime {
        Regime::RatioPositive => match f {
            GeneratorFunction::Piecewise(pw) => {
                if pw.is_zero() {
                    return Ok(CompletenessVerdict {
                        status: CompletenessStatus::NotComplete,
                        basis: VerdictBasis::NotApplicable,
                        regime,
                    });
                }
                let range = scan_range_for(pw);
                let step = (range.1 - range.0) / 20_000.0;
                let report = zero_scan(pw, range, step)?;
                if let Some(zero) = report.certified_zeros().next() {
                    // Prefer the certified zero of smallest magnitude.
                    let zero = report
                        .certified_zeros()
                        .min_by(|a, b| a.abs().total_cmp(&b.abs()))
                        .unwrap_or(zero);
                    Ok(CompletenessVerdict {
                        status: CompletenessStatus::NotComplete,
                        basis: VerdictBasis::WienerZeroFound { zero },
                        regime,
                    })
                } else {
                    // A scan cannot certify nonvanishing on all of ℝ.
                    Ok(CompletenessVerdict {
                        status: CompletenessStatus::Unknown,
                        basis: VerdictBasis::NotApplicable,
                        regime,
                    })
                }
            }
            GeneratorFunction::Catalog(cat) => {
                if cat.transform_positive_everywhere() {
                    Ok(CompletenessVerdict {
                        status: CompletenessStatus::Complete,
                        basis: VerdictBasis::WienerPositivityCertificate,
                        regime,
                    })
                } else if let Some(zero) = cat.certified_transform_zero() {
                    Ok(CompletenessVerdict {
                        status: CompletenessStatus::NotComplete,
                        basis: VerdictBasis::WienerZeroFound { zero },
                        regime,
                    })
                } else {
                    Ok(CompletenessVerdict {
                        status: CompletenessStatus::Unknown,
                        basis: VerdictBasis::NotApplicable,
                        regime,
                    })
                }
            }
        },
        Regime::RatioZero => match f {
            GeneratorFunction::Piecewise(pw) if is_positive_step(pw) => Ok(CompletenessVerdict {
                status: CompletenessStatus::Complete,
                basis: VerdictBasis::StepFunctionTheorem,
                regime,
            }),
            _ => Ok(CompletenessVerdict {
                status: CompletenessStatus::Unknown,
                basis: VerdictBasis::NotApplicable,
                regime,
            }),
        },
    }
}
