//! Dual witness against completeness over a lattice βℤ: a nonzero g whose
//! pairings ⟨τ_λ f, g⟩ vanish on the lattice.
//!
//! The recipe divides in frequency: pick h(x) = sin((π/β)x)·sinc²(wx/2),
//! which vanishes on βℤ and has transform supported on two bands around
//! ±π/β; set G = ĥ/f̂ there (legal because f̂ > 0 everywhere) and let g be
//! the inverse transform of G. Then ⟨τ_λ f, g⟩ = h(λ) identically under the
//! convention f̂(ζ) = ∫ f e^{ixζ} dx, which the report checks by direct
//! numerical inner products.

use super::CompletenessError;
use crate::piecewise::CatalogFunction;
use crate::quad::adaptive_gauss;
use std::f64::consts::PI;

/// Trapezoid nodes over the positive transform band (the negative band is
/// folded in by odd symmetry).
const SPECTRAL_NODES: usize = 10_000;

/// One tested translate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairingRow {
    pub lambda: f64,
    pub inner_product: f64,
    pub h_value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnihilatorReport {
    pub beta: f64,
    pub spectral_margin: f64,
    pub rows: Vec<PairingRow>,
    /// max |⟨τ_λ f, g⟩| over the lattice points βn, |n| ≤ n_max.
    pub lattice_max: f64,
    /// The off-lattice control point and its pairing magnitude.
    pub control_lambda: f64,
    pub control_value: f64,
    /// Single constant fitted across all tested λ in ⟨τ_λ f, g⟩ ≈ C·h(λ).
    pub fitted_constant: f64,
    /// max |⟨τ_λ f, g⟩ − C·h(λ)| over all tested λ.
    pub max_proportionality_deviation: f64,
}

struct SpectralProfile {
    zetas: Vec<f64>,
    weights: Vec<f64>,
    values: Vec<f64>,
}

impl SpectralProfile {
    /// g(x) = (1/π) ∫ band Im G(ζ) · sin(xζ) dζ, trapezoid on the band grid.
    fn g_at(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.zetas.len() {
            acc += self.weights[i] * self.values[i] * (x * self.zetas[i]).sin();
        }
        acc / PI
    }
}

fn h_eval(omega: f64, w: f64, x: f64) -> f64 {
    let t = 0.5 * w * x;
    let s = if t.abs() < 1e-8 { 1.0 - t * t / 6.0 } else { t.sin() / t };
    (omega * x).sin() * s * s
}

/// Build the annihilator for Λ = βℤ against a generator with a strictly
/// positive transform, and measure the pairings ⟨τ_λ f, g⟩ by adaptive
/// quadrature (absolute tolerance 1e-8) on the lattice, at an off-lattice
/// control point, and at extra probes for the proportionality fit.
pub fn construct_annihilator(
    f: &CatalogFunction,
    beta: f64,
    spectral_margin: f64,
    n_max: u32,
) -> Result<AnnihilatorReport, CompletenessError> {
    if !f.transform_positive_everywhere() {
        return Err(CompletenessError::CertificateMissing);
    }
    if !(beta > 0.0) {
        return Err(CompletenessError::InvalidPlan(format!("beta = {beta} must be positive")));
    }
    let omega = PI / beta;
    let w = spectral_margin;
    if !(w > 0.0) || w >= omega {
        return Err(CompletenessError::InvalidPlan(format!(
            "spectral margin {w} must lie in (0, π/β = {omega})"
        )));
    }

    // Im ĥ(ζ) = (π/w)(1 − |ζ−ω|/w) on the positive band [ω−w, ω+w].
    let m = SPECTRAL_NODES;
    let dz = 2.0 * w / m as f64;
    let mut zetas = Vec::with_capacity(m + 1);
    let mut weights = Vec::with_capacity(m + 1);
    let mut values = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let zeta = (omega - w) + j as f64 * dz;
        let im_h = (PI / w) * (1.0 - (zeta - omega).abs() / w).max(0.0);
        let f_hat = f.transform(zeta).re;
        zetas.push(zeta);
        weights.push(if j == 0 || j == m { 0.5 * dz } else { dz });
        values.push(im_h / f_hat);
    }
    let profile = SpectralProfile { zetas, weights, values };

    // Truncation radius from the generator's decay so the tail is far below
    // the quadrature tolerance.
    let radius = match f {
        CatalogFunction::TwoSidedExponential { alpha } => 30.0 / alpha,
        CatalogFunction::Gaussian { sigma } => 9.0 * sigma,
        CatalogFunction::SineSincSquared { .. } => unreachable!("no positivity certificate"),
    };

    let pairing = |lambda: f64| -> Result<f64, CompletenessError> {
        let integrand = |x: f64| f.eval(x - lambda) * profile.g_at(x);
        let q = adaptive_gauss(&integrand, lambda - radius, lambda + radius, 1e-8);
        if !q.converged || !q.value.is_finite() {
            return Err(CompletenessError::QuadratureFailure(format!(
                "inner product at lambda = {lambda}"
            )));
        }
        Ok(q.value)
    };

    let mut lambdas: Vec<f64> = (-(n_max as i64)..=n_max as i64).map(|n| n as f64 * beta).collect();
    let control_lambda = 0.5 * beta;
    lambdas.push(control_lambda);
    lambdas.push(1.7 * beta);
    lambdas.push(-2.3 * beta);

    let mut rows = Vec::with_capacity(lambdas.len());
    for &lambda in &lambdas {
        rows.push(PairingRow {
            lambda,
            inner_product: pairing(lambda)?,
            h_value: h_eval(omega, w, lambda),
        });
    }

    // The first 2·n_max + 1 rows are the lattice points.
    let lattice_count = 2 * n_max as usize + 1;
    let lattice_max = rows[..lattice_count]
        .iter()
        .map(|r| r.inner_product.abs())
        .fold(0.0f64, f64::max);
    let control_value = rows[lattice_count].inner_product.abs();

    // Least-squares C over the rows where h is not tiny.
    let (mut num, mut den) = (0.0, 0.0);
    for r in rows.iter().filter(|r| r.h_value.abs() > 1e-2) {
        num += r.inner_product * r.h_value;
        den += r.h_value * r.h_value;
    }
    let fitted_constant = if den > 0.0 { num / den } else { 0.0 };
    let max_proportionality_deviation = rows
        .iter()
        .map(|r| (r.inner_product - fitted_constant * r.h_value).abs())
        .fold(0.0f64, f64::max);

    Ok(AnnihilatorReport {
        beta,
        spectral_margin,
        rows,
        lattice_max,
        control_lambda,
        control_value,
        fitted_constant,
        max_proportionality_deviation,
    })
}
