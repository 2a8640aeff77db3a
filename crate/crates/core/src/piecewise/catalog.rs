//! Small catalog of analytic functions with known Fourier transforms, used
//! where compact support in time is traded for certainty in frequency.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Analytic functions with closed-form transforms under the convention
/// f̂(ζ) = ∫ f(x) e^{ixζ} dx.
#[derive(Debug, Clone, PartialEq)]
pub enum CatalogFunction {
    /// e^{−α|x|}; transform 2α/(α² + ζ²), strictly positive.
    TwoSidedExponential { alpha: f64 },
    /// e^{−x²/(2σ²)}; transform σ√(2π)·e^{−σ²ζ²/2}, strictly positive.
    Gaussian { sigma: f64 },
    /// sin(ωx)·(sin(wx/2)/(wx/2))²; transform supported on the two bands
    /// ±[ω−w, ω+w] (for ω > w) and vanishing on every lattice point of
    /// (π/ω)·ℤ in time.
    SineSincSquared { omega: f64, width: f64 },
}

impl CatalogFunction {
    pub fn two_sided_exponential(alpha: f64) -> Option<Self> {
        (alpha > 0.0).then_some(CatalogFunction::TwoSidedExponential { alpha })
    }

    pub fn gaussian(sigma: f64) -> Option<Self> {
        (sigma > 0.0).then_some(CatalogFunction::Gaussian { sigma })
    }

    pub fn sine_sinc_squared(omega: f64, width: f64) -> Option<Self> {
        (omega > 0.0 && width > 0.0).then_some(CatalogFunction::SineSincSquared { omega, width })
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            CatalogFunction::TwoSidedExponential { alpha } => (-alpha * x.abs()).exp(),
            CatalogFunction::Gaussian { sigma } => (-x * x / (2.0 * sigma * sigma)).exp(),
            CatalogFunction::SineSincSquared { omega, width } => {
                (omega * x).sin() * sinc(0.5 * width * x).powi(2)
            }
        }
    }

    /// Closed-form transform value.
    pub fn transform(&self, zeta: f64) -> Complex64 {
        match self {
            CatalogFunction::TwoSidedExponential { alpha } => {
                Complex64::new(2.0 * alpha / (alpha * alpha + zeta * zeta), 0.0)
            }
            CatalogFunction::Gaussian { sigma } => {
                Complex64::new(sigma * (2.0 * PI).sqrt() * (-0.5 * sigma * sigma * zeta * zeta).exp(), 0.0)
            }
            CatalogFunction::SineSincSquared { omega, width } => {
                // (q̂(ζ+ω) − q̂(ζ−ω)) / (2i) with q̂ the triangle of half-width w.
                let tri = |z: f64| triangle_transform(*width, z);
                let im = 0.5 * (tri(zeta - omega) - tri(zeta + omega));
                Complex64::new(0.0, im)
            }
        }
    }

    /// Is the transform strictly positive everywhere (a nonvanishing
    /// certificate in closed form)?
    pub fn transform_positive_everywhere(&self) -> bool {
        matches!(
            self,
            CatalogFunction::TwoSidedExponential { .. } | CatalogFunction::Gaussian { .. }
        )
    }

    /// A frequency where the transform provably vanishes, when the transform
    /// has compact support.
    pub fn certified_transform_zero(&self) -> Option<f64> {
        match self {
            CatalogFunction::SineSincSquared { omega, width } => {
                if omega > width {
                    Some(0.0)
                } else {
                    Some(omega + width + 1.0)
                }
            }
            _ => None,
        }
    }

    /// Support of the transform as bands, `None` when unbounded.
    pub fn transform_support(&self) -> Option<[(f64, f64); 2]> {
        match self {
            CatalogFunction::SineSincSquared { omega, width } => {
                Some([(-omega - width, -omega + width), (omega - width, omega + width)])
            }
            _ => None,
        }
    }
}

#[inline]
fn sinc(t: f64) -> f64 {
    if t.abs() < 1e-8 {
        1.0 - t * t / 6.0
    } else {
        t.sin() / t
    }
}

/// Transform of sinc²(w·x/2): the triangle (2π/w)·max(0, 1 − |ζ|/w).
fn triangle_transform(w: f64, zeta: f64) -> f64 {
    let t = 1.0 - zeta.abs() / w;
    if t <= 0.0 {
        0.0
    } else {
        2.0 * PI / w * t
    }
}
