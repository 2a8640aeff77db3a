//! Sampled Δ₂ classification and the growth record attached to verdicts.

use super::{OrliczError, OrliczFunction};
use crate::grid::GridSpec;

/// Ratio beyond which Φ(2x)/Φ(x) counts as a Δ₂ refutation.
pub const DELTA2_BLOWUP: f64 = 1e6;

/// Sampled evidence about the Δ₂ condition Φ(2x) ≤ D·Φ(x).
#[derive(Debug, Clone, PartialEq)]
pub enum Delta2Evidence {
    /// A constant covering every sampled ratio (evidence, not proof).
    Witness { d: f64 },
    /// A sample where the doubling ratio exceeds the blow-up threshold.
    Refuted { x: f64, ratio: f64 },
}

/// Growth classification of an Orlicz function: behavior of Φ(x)/x at zero
/// and the sampled Δ₂ outcome (`None` when the sweep was inconclusive).
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthClass {
    pub limit_ratio_at_zero: f64,
    pub delta2: Option<Delta2Evidence>,
}

impl GrowthClass {
    pub fn delta2_witness(&self) -> Option<f64> {
        match &self.delta2 {
            Some(Delta2Evidence::Witness { d }) => Some(*d),
            _ => None,
        }
    }
}

/// Sweep Φ(2x)/Φ(x) over the grid.
///
/// Stable finite suprema (last-decade sup within 1% of the global sup) become
/// a witness `D = sup · (1 + 1e-6)`; a ratio past [`DELTA2_BLOWUP`] becomes a
/// refutation sample. Points where Φ vanishes at x but not at 2x refute
/// directly (no constant works there).
pub fn check_delta2(phi: &OrliczFunction, spec: &GridSpec) -> Result<GrowthClass, OrliczError> {
    spec.validate().map_err(|e| OrliczError::InvalidGrid(e.to_string()))?;
    let pts = spec.points();
    let limit_ratio_at_zero = phi.limit_ratio_at_zero();

    let mut sup = 0.0f64;
    let mut last_decade_sup = 0.0f64;
    let last_decade_lo = 10f64.powi(spec.decade_hi - 1);
    let mut refuted: Option<Delta2Evidence> = None;
    let mut any_positive = false;

    for &x in &pts {
        let a = phi.eval(x);
        let b = phi.eval(2.0 * x);
        if a == 0.0 {
            if b > 0.0 {
                refuted = Some(Delta2Evidence::Refuted { x, ratio: f64::INFINITY });
                break;
            }
            continue;
        }
        any_positive = true;
        if a.is_infinite() {
            // Φ(x) = Φ(2x) = ∞; any constant covers the point.
            continue;
        }
        let ratio = b / a;
        if ratio > DELTA2_BLOWUP {
            refuted = Some(Delta2Evidence::Refuted { x, ratio });
            break;
        }
        if ratio > sup {
            sup = ratio;
        }
        if x >= last_decade_lo && ratio > last_decade_sup {
            last_decade_sup = ratio;
        }
    }

    if refuted.is_none() && !any_positive {
        return Err(OrliczError::DegenerateFunction);
    }

    let delta2 = match refuted {
        Some(r) => Some(r),
        None => {
            let stable = sup.is_finite() && sup > 0.0 && (sup - last_decade_sup) <= 0.01 * sup;
            if stable {
                Some(Delta2Evidence::Witness { d: sup * (1.0 + 1e-6) })
            } else {
                None
            }
        }
    };

    Ok(GrowthClass { limit_ratio_at_zero, delta2 })
}
