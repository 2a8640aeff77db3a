//! Closed-form Fourier transforms of piecewise functions and zero scanning
//! of the transform modulus.
//!
//! Convention: f̂(ζ) = ∫ f(x)·e^{ixζ} dx, no normalization constant. The
//! inverse transform used elsewhere carries the 1/(2π).

use super::{PiecewiseFunction, PiecewiseError};
use num_complex::Complex64;

/// Certification threshold: |f̂(z)| at or below this makes a zero certified.
pub const ZERO_CERT_THRESHOLD: f64 = 1e-10;
/// Grid minima below this trigger golden-section refinement.
pub const REFINE_TRIGGER: f64 = 1e-4;

#[inline]
fn sinc(t: f64) -> f64 {
    if t.abs() < 1e-8 {
        1.0 - t * t / 6.0
    } else {
        t.sin() / t
    }
}

/// (sin θ − θ cos θ), series below 1e-3 where the direct form cancels.
#[inline]
fn sin_minus_cos_moment(theta: f64) -> f64 {
    if theta.abs() < 1e-3 {
        let t2 = theta * theta;
        theta * t2 * (1.0 / 3.0 - t2 / 30.0 + t2 * t2 / 840.0)
    } else {
        theta.sin() - theta * theta.cos()
    }
}

/// f̂(ζ) = ∫ f(x) e^{ixζ} dx, segment-exact.
///
/// Each segment is integrated around its midpoint m: the constant part gives
/// width·sinc(θ)·e^{imζ} with θ = width·ζ/2 and the linear part the
/// first-moment closed form, both stable through ζ = 0.
pub fn fourier_transform(f: &PiecewiseFunction, zeta: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, seg) in f.segments().iter().enumerate() {
        let (u, v) = (f.breakpoints()[i], f.breakpoints()[i + 1]);
        if zeta == 0.0 {
            acc += Complex64::new(seg.slope * 0.5 * (v * v - u * u) + seg.intercept * (v - u), 0.0);
            continue;
        }
        let w = v - u;
        let m = 0.5 * (u + v);
        let theta = 0.5 * w * zeta;
        let phase = Complex64::from_polar(1.0, m * zeta);
        let value_at_mid = seg.eval(m);
        let base = w * sinc(theta);
        // ∫_{-h}^{h} t e^{itζ} dt = 2i (sin θ − θ cos θ)/ζ²
        let moment = 2.0 * sin_minus_cos_moment(theta) / (zeta * zeta);
        acc += phase * Complex64::new(value_at_mid * base, seg.slope * moment);
    }
    acc
}

/// A located transform zero; `certified` means |f̂| evaluated in closed form
/// at the location is at most [`ZERO_CERT_THRESHOLD`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformZero {
    pub location: f64,
    pub certified: bool,
}

/// Outcome of scanning |f̂| over a frequency window.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub zeros: Vec<TransformZero>,
    pub scan_range: (f64, f64),
    pub grid_step: f64,
    /// min over the scan grid of |f̂(ζ)|.
    pub min_abs_value: f64,
}

impl SpectrumReport {
    pub fn certified_zeros(&self) -> impl Iterator<Item = f64> + '_ {
        self.zeros.iter().filter(|z| z.certified).map(|z| z.location)
    }
}

/// Detect single-step and centered-tent shapes, whose transform zeros form
/// the analytic lattice {2πk/width}.
fn analytic_zero_lattice(f: &PiecewiseFunction) -> Option<f64> {
    let segs = f.segments();
    match segs.len() {
        1 if segs[0].slope == 0.0 && segs[0].intercept != 0.0 => {
            Some(f.breakpoints()[1] - f.breakpoints()[0])
        }
        2 => {
            let (b0, b1, b2) = (f.breakpoints()[0], f.breakpoints()[1], f.breakpoints()[2]);
            let half = b1 - b0;
            let symmetric = ((b2 - b1) - half).abs() <= 1e-12 * half.abs().max(1.0);
            let rising = segs[0].slope > 0.0 && segs[1].slope == -segs[0].slope;
            let grounded = f.eval(b0).abs() <= 1e-12 && segs[1].eval(b2).abs() <= 1e-12;
            if symmetric && rising && grounded {
                // sinc² shape: zeros at 2πk / half-width
                Some(half)
            } else {
                None
            }
        }
        _ => None,
    }
}

fn golden_section_min(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    const INV_PHI: f64 = 0.6180339887498949;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..120 {
        if gc < gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            gd = g(d);
        }
    }
    0.5 * (a + b)
}

/// Scan |f̂| on a grid over `range`, refine grid minima below
/// [`REFINE_TRIGGER`] by golden-section search, and certify zeros with
/// |f̂| ≤ [`ZERO_CERT_THRESHOLD`]. For step and tent shapes the analytic
/// zero lattice inside the range is emitted as well.
///
/// A scan is a semi-decision: it can certify zeros but never nonvanishing
/// on all of ℝ.
pub fn zero_scan(
    f: &PiecewiseFunction,
    range: (f64, f64),
    grid_step: f64,
) -> Result<SpectrumReport, PiecewiseError> {
    if !(range.0 < range.1) || !(grid_step > 0.0) {
        return Err(PiecewiseError::EmptyRange);
    }
    let modulus = |z: f64| fourier_transform(f, z).norm();
    let n = ((range.1 - range.0) / grid_step).ceil() as usize;
    let xs: Vec<f64> = (0..=n).map(|i| range.0 + i as f64 * grid_step).collect();
    let vals: Vec<f64> = xs.iter().map(|&z| modulus(z)).collect();
    let min_abs_value = vals.iter().cloned().fold(f64::INFINITY, f64::min);

    let mut zeros: Vec<TransformZero> = Vec::new();
    if let Some(width) = analytic_zero_lattice(f) {
        let two_pi = 2.0 * std::f64::consts::PI;
        let k_lo = (range.0 * width / two_pi).floor() as i64;
        let k_hi = (range.1 * width / two_pi).ceil() as i64;
        for k in k_lo..=k_hi {
            if k == 0 {
                continue;
            }
            let z = two_pi * k as f64 / width;
            if z >= range.0 && z <= range.1 {
                zeros.push(TransformZero { location: z, certified: modulus(z) <= ZERO_CERT_THRESHOLD });
            }
        }
    }

    for i in 1..vals.len().saturating_sub(1) {
        if vals[i] < REFINE_TRIGGER && vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1] {
            let z = golden_section_min(&modulus, xs[i - 1], xs[i + 1]);
            let value = modulus(z);
            if value <= REFINE_TRIGGER * 1e-2 {
                zeros.push(TransformZero { location: z, certified: value <= ZERO_CERT_THRESHOLD });
            }
        }
    }

    zeros.sort_by(|a, b| a.location.total_cmp(&b.location));
    zeros.dedup_by(|b, a| {
        let close = (b.location - a.location).abs() <= grid_step.max(1e-9) * 0.5;
        if close {
            a.certified |= b.certified;
        }
        close
    });

    Ok(SpectrumReport { zeros, scan_range: range, grid_step, min_abs_value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_step_transform_values() {
        let f = PiecewiseFunction::step(0.0, 1.0, 1.0).unwrap();
        assert!((fourier_transform(&f, 0.0).re - 1.0).abs() < 1e-15);
        assert!(fourier_transform(&f, 0.0).im.abs() < 1e-15);
        assert!(fourier_transform(&f, 2.0 * PI).norm() < 1e-12);
        assert!((fourier_transform(&f, PI).norm() - 2.0 / PI).abs() < 1e-14);
    }

    #[test]
    fn small_zeta_is_smooth() {
        let f = PiecewiseFunction::tent(1.0, 2.0).unwrap();
        let at0 = fourier_transform(&f, 0.0).re;
        for z in [1e-9, 1e-7, 1e-5] {
            let v = fourier_transform(&f, z);
            assert!((v.re - at0).abs() < 1e-8);
            assert!(v.im.abs() < 1e-8);
        }
        assert!((at0 - f.integral()).abs() < 1e-14);
    }

    #[test]
    fn unit_step_zero_lattice() {
        let f = PiecewiseFunction::step(0.0, 1.0, 1.0).unwrap();
        let rep = zero_scan(&f, (-10.0, 10.0), 0.01).unwrap();
        let certified: Vec<f64> = rep.certified_zeros().collect();
        assert_eq!(certified.len(), 2);
        assert!((certified[0] + 2.0 * PI).abs() < 1e-9);
        assert!((certified[1] - 2.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn width_two_step_zero_lattice() {
        let f = PiecewiseFunction::step(0.0, 2.0, 1.0).unwrap();
        let rep = zero_scan(&f, (-10.0, 10.0), 0.01).unwrap();
        let certified: Vec<f64> = rep.certified_zeros().collect();
        let expect: Vec<f64> = vec![-3.0 * PI, -2.0 * PI, -PI, PI, 2.0 * PI, 3.0 * PI];
        assert_eq!(certified.len(), expect.len());
        for (z, e) in certified.iter().zip(expect.iter()) {
            assert!((z - e).abs() < 1e-9, "{z} vs {e}");
        }
    }

    #[test]
    fn tent_transform_positive_below_first_zero() {
        let f = PiecewiseFunction::tent(1.0, 1.0).unwrap();
        let rep = zero_scan(&f, (0.1, 5.0), 0.01).unwrap();
        assert!(rep.zeros.is_empty());
        assert!(rep.min_abs_value > 0.0);
    }

    #[test]
    fn empty_range_rejected() {
        let f = PiecewiseFunction::step(0.0, 1.0, 1.0).unwrap();
        assert_eq!(zero_scan(&f, (1.0, 1.0), 0.1).unwrap_err(), PiecewiseError::EmptyRange);
        assert_eq!(zero_scan(&f, (0.0, 1.0), 0.0).unwrap_err(), PiecewiseError::EmptyRange);
    }
}
