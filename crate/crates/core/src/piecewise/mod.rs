//! Compactly supported piecewise-constant and piecewise-linear functions on
//! the real line, with exact interval algebra.
//!
//! A function is a strictly increasing breakpoint list plus one `(slope,
//! intercept)` pair per gap, f(x) = slope·x + intercept on `[bₖ, bₖ₊₁)`, zero
//! outside. Canonical form merges adjacent identical segments (bitwise value
//! equality) and trims zero segments at both ends, so `PartialEq` is exact
//! canonical-form equality.

mod catalog;
mod fourier;

pub use catalog::CatalogFunction;
pub use fourier::{fourier_transform, zero_scan, SpectrumReport};

use crate::orlicz::OrliczFunction;
use crate::quad::adaptive_gauss;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PiecewiseError {
    #[error("empty interval: left bound {0} is not below right bound {1}")]
    EmptyInterval(f64, f64),
    #[error("parameter must be positive, got {0}")]
    NonPositiveParameter(f64),
    #[error("linear combination of no terms")]
    EmptyCombination,
    #[error("scan range is empty")]
    EmptyRange,
    #[error("invalid construction: {0}")]
    Invalid(String),
}

/// One linear piece, f(x) = slope·x + intercept on its interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub slope: f64,
    pub intercept: f64,
}

impl Segment {
    pub const ZERO: Segment = Segment { slope: 0.0, intercept: 0.0 };

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }

    fn is_zero(&self) -> bool {
        self.slope == 0.0 && self.intercept == 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PiecewiseFunction {
    breakpoints: Vec<f64>,
    segments: Vec<Segment>,
}

impl PiecewiseFunction {
    /// The zero function (empty support).
    pub fn zero() -> Self {
        PiecewiseFunction::default()
    }

    /// height · χ_[left, right).
    pub fn step(left: f64, right: f64, height: f64) -> Result<Self, PiecewiseError> {
        if !(left < right) {
            return Err(PiecewiseError::EmptyInterval(left, right));
        }
        Ok(Self::from_parts(
            vec![left, right],
            vec![Segment { slope: 0.0, intercept: height }],
        )?)
    }

    /// Tent a·(b − |x|) on [−b, b], peak a·b at the origin.
    pub fn tent(a: f64, b: f64) -> Result<Self, PiecewiseError> {
        if !(a > 0.0) {
            return Err(PiecewiseError::NonPositiveParameter(a));
        }
        if !(b > 0.0) {
            return Err(PiecewiseError::NonPositiveParameter(b));
        }
        Ok(Self::from_parts(
            vec![-b, 0.0, b],
            vec![
                Segment { slope: a, intercept: a * b },
                Segment { slope: -a, intercept: a * b },
            ],
        )?)
    }

    /// Build from raw parts; validates shape and canonicalizes.
    pub fn from_parts(breakpoints: Vec<f64>, segments: Vec<Segment>) -> Result<Self, PiecewiseError> {
        if breakpoints.is_empty() && segments.is_empty() {
            return Ok(Self::zero());
        }
        if breakpoints.len() != segments.len() + 1 {
            return Err(PiecewiseError::Invalid(format!(
                "{} breakpoints need {} segments, got {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                segments.len()
            )));
        }
        if breakpoints.iter().any(|b| !b.is_finite())
            || segments.iter().any(|s| !s.slope.is_finite() || !s.intercept.is_finite())
        {
            return Err(PiecewiseError::Invalid("non-finite breakpoint or segment".into()));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(PiecewiseError::Invalid("breakpoints must be strictly increasing".into()));
        }
        let mut f = PiecewiseFunction { breakpoints, segments };
        f.canonicalize();
        Ok(f)
    }

    /// Merge adjacent identical segments and trim zero segments at the ends.
    fn canonicalize(&mut self) {
        if self.segments.is_empty() {
            self.breakpoints.clear();
            return;
        }
        // Trim zero ends first.
        let mut lo = 0;
        while lo < self.segments.len() && self.segments[lo].is_zero() {
            lo += 1;
        }
        let mut hi = self.segments.len();
        while hi > lo && self.segments[hi - 1].is_zero() {
            hi -= 1;
        }
        if lo == hi {
            self.breakpoints.clear();
            self.segments.clear();
            return;
        }
        let mut new_brks = Vec::with_capacity(hi - lo + 1);
        let mut new_segs: Vec<Segment> = Vec::with_capacity(hi - lo);
        new_brks.push(self.breakpoints[lo]);
        for i in lo..hi {
            let seg = self.segments[i];
            if new_segs.last() == Some(&seg) {
                // identical neighbor: extend the previous piece
                *new_brks.last_mut().unwrap() = self.breakpoints[i + 1];
            } else {
                new_segs.push(seg);
                new_brks.push(self.breakpoints[i + 1]);
            }
        }
        self.breakpoints = new_brks;
        self.segments = new_segs;
        debug_assert_eq!(self.breakpoints.len(), self.segments.len() + 1);
        debug_assert!(self.breakpoints.windows(2).all(|w| w[0] < w[1]));
    }

    pub fn is_zero(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Support interval, `None` for the zero function.
    pub fn support(&self) -> Option<(f64, f64)> {
        if self.is_zero() {
            None
        } else {
            Some((self.breakpoints[0], self.breakpoints[self.breakpoints.len() - 1]))
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let i = self.breakpoints.partition_point(|&b| b <= x);
        if i == 0 || i == self.breakpoints.len() {
            return 0.0;
        }
        self.segments[i - 1].eval(x)
    }

    /// τ_λ f = f(· − λ).
    pub fn translate(&self, lambda: f64) -> Self {
        let breakpoints = self.breakpoints.iter().map(|b| b + lambda).collect();
        let segments = self
            .segments
            .iter()
            .map(|s| Segment { slope: s.slope, intercept: s.intercept - s.slope * lambda })
            .collect();
        PiecewiseFunction::from_parts(breakpoints, segments)
            .expect("translation preserves validity")
    }

    /// Pointwise scaling c·f, one rounding per stored value.
    pub fn scale(&self, c: f64) -> Self {
        let segments = self
            .segments
            .iter()
            .map(|s| Segment { slope: s.slope * c, intercept: s.intercept * c })
            .collect();
        PiecewiseFunction::from_parts(self.breakpoints.clone(), segments)
            .expect("scaling preserves validity")
    }

    /// Pointwise division f / d, one correctly rounded division per value.
    pub(crate) fn scale_div(&self, d: f64) -> Self {
        let segments = self
            .segments
            .iter()
            .map(|s| Segment { slope: s.slope / d, intercept: s.intercept / d })
            .collect();
        PiecewiseFunction::from_parts(self.breakpoints.clone(), segments)
            .expect("scaling preserves validity")
    }

    /// |f|: splits segments at interior sign changes, then negates the
    /// negative pieces.
    pub fn abs(&self) -> Self {
        let mut brks = Vec::with_capacity(self.breakpoints.len());
        let mut segs = Vec::with_capacity(self.segments.len());
        if self.is_zero() {
            return Self::zero();
        }
        brks.push(self.breakpoints[0]);
        for (i, seg) in self.segments.iter().enumerate() {
            let (l, r) = (self.breakpoints[i], self.breakpoints[i + 1]);
            let mut push = |right: f64, s: Segment| {
                let mid = 0.5 * (*brks.last().unwrap() + right);
                let flipped = if s.eval(mid) < 0.0 {
                    Segment { slope: -s.slope, intercept: -s.intercept }
                } else {
                    s
                };
                segs.push(flipped);
                brks.push(right);
            };
            if seg.slope != 0.0 {
                let root = -seg.intercept / seg.slope;
                if root > l && root < r {
                    push(root, *seg);
                    push(r, *seg);
                    continue;
                }
            }
            push(r, *seg);
        }
        PiecewiseFunction::from_parts(brks, segs).expect("abs preserves validity")
    }

    /// Exact integral ∫ f dx.
    pub fn integral(&self) -> f64 {
        let mut acc = 0.0;
        for (i, seg) in self.segments.iter().enumerate() {
            let (l, r) = (self.breakpoints[i], self.breakpoints[i + 1]);
            acc += seg.slope * 0.5 * (r * r - l * l) + seg.intercept * (r - l);
        }
        acc
    }

    /// sup |f| (attained at segment endpoints since pieces are linear).
    pub fn sup_abs(&self) -> f64 {
        let mut m = 0.0f64;
        for (i, seg) in self.segments.iter().enumerate() {
            let (l, r) = (self.breakpoints[i], self.breakpoints[i + 1]);
            m = m.max(seg.eval(l).abs()).max(seg.eval(r).abs());
        }
        m
    }

    /// Exact ∫ |f·g| dx: refine to the common breakpoint partition, split at
    /// the roots of both factors, integrate the sign-constant cubic pieces in
    /// closed form.
    pub fn abs_product_integral(&self, other: &PiecewiseFunction) -> f64 {
        if self.is_zero() || other.is_zero() {
            return 0.0;
        }
        let mut cuts: Vec<f64> = Vec::new();
        cuts.extend_from_slice(&self.breakpoints);
        cuts.extend_from_slice(&other.breakpoints);
        for f in [self, other] {
            for (i, seg) in f.segments.iter().enumerate() {
                if seg.slope != 0.0 {
                    let root = -seg.intercept / seg.slope;
                    if root > f.breakpoints[i] && root < f.breakpoints[i + 1] {
                        cuts.push(root);
                    }
                }
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut acc = 0.0;
        for w in cuts.windows(2) {
            let (l, r) = (w[0], w[1]);
            let mid = 0.5 * (l + r);
            let (fa, fb) = (self.eval(mid), other.eval(mid));
            if fa == 0.0 || fb == 0.0 {
                continue;
            }
            // Product of two linear pieces: quadratic with constant sign here.
            let sa = self.segment_at(mid);
            let sb = other.segment_at(mid);
            let c2 = sa.slope * sb.slope;
            let c1 = sa.slope * sb.intercept + sb.slope * sa.intercept;
            let c0 = sa.intercept * sb.intercept;
            let anti = |x: f64| c2 * x * x * x / 3.0 + c1 * x * x / 2.0 + c0 * x;
            acc += (anti(r) - anti(l)).abs();
        }
        acc
    }

    fn segment_at(&self, x: f64) -> Segment {
        let i = self.breakpoints.partition_point(|&b| b <= x);
        if i == 0 || i == self.breakpoints.len() {
            Segment::ZERO
        } else {
            self.segments[i - 1]
        }
    }
}

/// A breakpoint event for the sweep in [`linear_combine`]: at `x` the running
/// slope/intercept change by the deltas.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Event {
    pub x: f64,
    pub dslope: f64,
    pub dintercept: f64,
}

/// Sweep-combine a sorted-or-unsorted event list into a canonical function.
/// Interval coefficients are accumulated with plain additions in sweep order,
/// which is exact whenever the deltas are integers of bounded size.
pub(crate) fn combine_events(mut events: Vec<Event>) -> PiecewiseFunction {
    events.sort_by(|a, b| a.x.total_cmp(&b.x));
    let mut brks: Vec<f64> = Vec::new();
    let mut segs: Vec<Segment> = Vec::new();
    let mut slope = 0.0f64;
    let mut intercept = 0.0f64;
    let mut i = 0;
    while i < events.len() {
        let x = events[i].x;
        while i < events.len() && events[i].x == x {
            slope += events[i].dslope;
            intercept += events[i].dintercept;
            i += 1;
        }
        if let Some(&next_x) = events.get(i).map(|e| &e.x) {
            if next_x > x {
                brks.push(x);
                segs.push(Segment { slope, intercept });
            }
        } else {
            brks.push(x);
        }
    }
    if segs.is_empty() {
        return PiecewiseFunction::zero();
    }
    debug_assert_eq!(brks.len(), segs.len() + 1);
    let mut f = PiecewiseFunction { breakpoints: brks, segments: segs };
    f.canonicalize();
    f
}

/// Exact pointwise sum Σ coefᵢ·fᵢ in canonical form.
pub fn linear_combine(terms: &[(f64, &PiecewiseFunction)]) -> Result<PiecewiseFunction, PiecewiseError> {
    if terms.is_empty() {
        return Err(PiecewiseError::EmptyCombination);
    }
    let mut events = Vec::new();
    for (coef, f) in terms {
        for (i, seg) in f.segments.iter().enumerate() {
            let ds = coef * seg.slope;
            let di = coef * seg.intercept;
            events.push(Event { x: f.breakpoints[i], dslope: ds, dintercept: di });
            events.push(Event { x: f.breakpoints[i + 1], dslope: -ds, dintercept: -di });
        }
    }
    Ok(combine_events(events))
}

/// The modular ∫ Φ(|f(x)| / scale) dx, extended-real valued.
///
/// Constant pieces contribute width·Φ(|c|/scale) exactly; linear pieces use
/// the closed-form power antiderivative for power kinds and adaptive Gauss
/// quadrature (absolute tolerance 1e-10) otherwise. The result is `+inf` as
/// soon as the integrand is infinite on a set of positive measure.
pub fn modular(phi: &OrliczFunction, f: &PiecewiseFunction, scale: f64) -> f64 {
    debug_assert!(scale > 0.0);
    let mut acc = 0.0;
    for (i, seg) in f.segments.iter().enumerate() {
        let (l, r) = (f.breakpoints[i], f.breakpoints[i + 1]);
        let c = modular_segment(phi, seg, l, r, scale);
        if c.is_infinite() {
            return f64::INFINITY;
        }
        acc += c;
    }
    acc
}

fn modular_segment(phi: &OrliczFunction, seg: &Segment, l: f64, r: f64, scale: f64) -> f64 {
    if seg.slope == 0.0 {
        let v = seg.intercept.abs() / scale;
        let value = phi.eval(v);
        if value == 0.0 {
            return 0.0;
        }
        return (r - l) * value;
    }
    // Split at the sign change so |f| is linear on each piece.
    let root = -seg.intercept / seg.slope;
    if root > l && root < r {
        return modular_ramp(phi, seg, l, root, scale) + modular_ramp(phi, seg, root, r, scale);
    }
    modular_ramp(phi, seg, l, r, scale)
}

/// Piece where |f| is linear: values ramp from |f(l)| to |f(r)|.
fn modular_ramp(phi: &OrliczFunction, seg: &Segment, l: f64, r: f64, scale: f64) -> f64 {
    let (va, vb) = (seg.eval(l).abs() / scale, seg.eval(r).abs() / scale);
    let width = r - l;
    if va == vb {
        return width * phi.eval(va);
    }
    let (lo, hi) = if va < vb { (va, vb) } else { (vb, va) };
    match phi {
        OrliczFunction::Power { p } => width / (hi - lo) * (power_anti(hi, *p) - power_anti(lo, *p)),
        OrliczFunction::PowerScaled { c, p } => {
            c * width / (hi - lo) * (power_anti(hi, *p) - power_anti(lo, *p))
        }
        _ => {
            if phi.eval(hi).is_infinite() {
                // Values exceed the finite threshold on a sub-ramp of
                // positive measure (jumps are left-closed, so Φ(hi) = ∞
                // forces hi strictly past the jump).
                return f64::INFINITY;
            }
            let g = |x: f64| phi.eval(seg.eval(x).abs() / scale);
            adaptive_gauss(&g, l, r, 1e-10).value
        }
    }
}

fn power_anti(t: f64, p: f64) -> f64 {
    t.powf(p + 1.0) / (p + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi(p: f64) -> OrliczFunction {
        OrliczFunction::power(p).unwrap()
    }

    #[test]
    fn step_evaluates_half_open() {
        let s = PiecewiseFunction::step(0.0, 1.0, 1.0).unwrap();
        assert_eq!(s.eval(0.5), 1.0);
        assert_eq!(s.eval(0.0), 1.0);
        assert_eq!(s.eval(1.0), 0.0);
        assert_eq!(s.eval(1.5), 0.0);
        let wide = PiecewiseFunction::step(0.0, 4.0, 0.25).unwrap();
        assert!((wide.integral() - 1.0).abs() < 1e-15);
        let neg = PiecewiseFunction::step(2.0, 3.0, -1.0).unwrap();
        assert_eq!(neg.eval(2.5), -1.0);
        assert!(PiecewiseFunction::step(1.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn tent_shape_and_area() {
        let t = PiecewiseFunction::tent(1.0, 1.0).unwrap();
        assert_eq!(t.eval(0.0), 1.0);
        assert_eq!(t.eval(1.0), 0.0);
        assert_eq!(t.eval(-1.0), 0.0);
        assert!((t.integral() - 1.0).abs() < 1e-15);
        let t = PiecewiseFunction::tent(2.0, 3.0).unwrap();
        assert_eq!(t.eval(0.0), 6.0);
        assert_eq!(t.eval(1.5), 3.0);
        assert!(PiecewiseFunction::tent(0.0, 1.0).is_err());
        assert!(PiecewiseFunction::tent(1.0, -2.0).is_err());
    }

    #[test]
    fn translation_group_law() {
        let s = PiecewiseFunction::step(0.0, 1.0, 1.0).unwrap();
        let shifted = s.translate(1.0);
        assert_eq!(shifted, PiecewiseFunction::step(1.0, 2.0, 1.0).unwrap());
        let t = PiecewiseFunction::tent(1.5, 2.0).unwrap();
        assert_eq!(t.translate(0.0), t);
        let back = t.translate(2.7).translate(-2.7);
        for x in [-1.9, -0.5, 0.0, 0.3, 1.8] {
            assert!((back.eval(x) - t.eval(x)).abs() < 1e-9);
        }
    }

    #[test]
    fn combine_merges_and_cancels() {
        let a = PiecewiseFunction::step(0.0, 1.0, 1.0).unwrap();
        let b = PiecewiseFunction::step(1.0, 2.0, 1.0).unwrap();
        let ab = linear_combine(&[(1.0, &a), (1.0, &b)]).unwrap();
        assert_eq!(ab, PiecewiseFunction::step(0.0, 2.0, 1.0).unwrap());

        let wide = PiecewiseFunction::step(0.0, 2.0, 1.0).unwrap();
        let diff = linear_combine(&[(1.0, &wide), (-1.0, &b)]).unwrap();
        assert_eq!(diff, a);

        let halves = linear_combine(&[(0.5, &wide), (0.5, &wide)]).unwrap();
        assert_eq!(halves, wide);

        assert_eq!(linear_combine(&[]).unwrap_err(), PiecewiseError::EmptyCombination);
    }

    #[test]
    fn combine_is_canonical_identity() {
        let t = PiecewiseFunction::tent(2.0, 1.5).unwrap();
        assert_eq!(linear_combine(&[(1.0, &t)]).unwrap(), t);
    }

    #[test]
    fn abs_splits_at_roots() {
        // slope through zero on [-1, 1]
        let f = PiecewiseFunction::from_parts(
            vec![-1.0, 1.0],
            vec![Segment { slope: 1.0, intercept: 0.0 }],
        )
        .unwrap();
        let a = f.abs();
        assert_eq!(a.eval(-0.5), 0.5);
        assert_eq!(a.eval(0.5), 0.5);
        assert!((a.integral() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn modular_examples() {
        let f = PiecewiseFunction::step(0.0, 2.0, 1.0).unwrap();
        assert!((modular(&phi(2.0), &f, 1.0) - 2.0).abs() < 1e-15);
        let f = PiecewiseFunction::step(0.0, 4.0, 0.25).unwrap();
        assert!((modular(&phi(2.0), &f, 1.0) - 0.25).abs() < 1e-15);
        let t = PiecewiseFunction::tent(1.0, 1.0).unwrap();
        assert!((modular(&phi(2.0), &t, 1.0) - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn modular_quadrature_path_matches_power_path() {
        // Evaluate a power-law modular through the generic quadrature branch
        // by wrapping it in a max with itself shifted (still x^2 pointwise).
        let p2 = phi(2.0);
        let wrapped = OrliczFunction::max_of(p2.clone(), p2.clone());
        let t = PiecewiseFunction::tent(1.3, 0.8).unwrap();
        let exact = modular(&p2, &t, 1.7);
        let quad = modular(&wrapped, &t, 1.7);
        assert!((exact - quad).abs() < 1e-9, "{exact} vs {quad}");
    }

    #[test]
    fn modular_detects_infinite_region() {
        let thr = OrliczFunction::threshold(1.0).unwrap();
        let tall = PiecewiseFunction::step(0.0, 1.0, 3.0).unwrap();
        assert!(modular(&thr, &tall, 1.0).is_infinite());
        assert_eq!(modular(&thr, &tall, 3.0), 0.0);
        let ramp = PiecewiseFunction::from_parts(
            vec![0.0, 2.0],
            vec![Segment { slope: 1.0, intercept: 0.0 }],
        )
        .unwrap();
        assert!(modular(&thr, &ramp, 1.0).is_infinite());
        assert_eq!(modular(&thr, &ramp, 2.0), 0.0);
    }

    #[test]
    fn modular_nonincreasing_in_scale() {
        let t = PiecewiseFunction::tent(2.0, 1.0).unwrap();
        let phis = [phi(1.0), phi(2.5), OrliczFunction::exp_minus_one()];
        for p in &phis {
            let mut prev = f64::INFINITY;
            for s in [0.25, 0.5, 1.0, 2.0, 4.0, 8.0] {
                let m = modular(p, &t, s);
                assert!(m <= prev * (1.0 + 1e-12) + 1e-300);
                prev = m;
            }
        }
    }

    #[test]
    fn abs_product_integral_examples() {
        let a = PiecewiseFunction::step(0.0, 1.0, 1.0).unwrap();
        assert!((a.abs_product_integral(&a) - 1.0).abs() < 1e-15);
        let b = PiecewiseFunction::step(2.0, 3.0, 1.0).unwrap();
        assert_eq!(a.abs_product_integral(&b), 0.0);
        // ∫ |x·1| over [0, 1] with sign change handled: f = x on [-1, 1]
        let ramp = PiecewiseFunction::from_parts(
            vec![-1.0, 1.0],
            vec![Segment { slope: 1.0, intercept: 0.0 }],
        )
        .unwrap();
        let box1 = PiecewiseFunction::step(-1.0, 1.0, 1.0).unwrap();
        assert!((ramp.abs_product_integral(&box1) - 1.0).abs() < 1e-15);
    }
}
