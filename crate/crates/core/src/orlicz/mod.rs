//! Orlicz functions: convex nondecreasing Φ on `[0, ∞)` with `Φ(0) = 0` and
//! `Φ(x) → ∞`, taking values in the extended reals (`+inf` is a legal value
//! and propagates through every operation).

mod conjugate;
mod growth;
mod majorize;

pub use conjugate::{conjugate, conjugate_at, young_gap};
pub use growth::{check_delta2, Delta2Evidence, GrowthClass};
pub use majorize::{
    embedding_verdict, majorizes, EmbeddingReport, MajorizationMode, MajorizationOutcome,
    MajorizationWitness, MeasureKind,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum OrliczError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid Orlicz function: {0}")]
    InvalidConstruction(String),
    #[error("requested ordinate {0} lies outside the tabulated conjugate domain (max slope {1})")]
    OutOfTabulatedRange(f64, f64),
    #[error("function is identically zero on the sampled grid")]
    DegenerateFunction,
    #[error("function stays below the requested level {0} on the search range")]
    Unbounded(f64),
    #[error("conjugate is not representable on the requested grid: {0}")]
    ConjugateNotRepresentable(String),
}

/// Strictly increasing table of `(x, Φ(x))` pairs starting at `(0, 0)`,
/// interpolated linearly and extrapolated by the last slope. Construction
/// rejects convexity violations instead of repairing them.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedOrlicz {
    grid: Vec<f64>,
    values: Vec<f64>,
}

impl TabulatedOrlicz {
    pub fn new(grid: Vec<f64>, values: Vec<f64>) -> Result<Self, OrliczError> {
        if grid.len() != values.len() {
            return Err(OrliczError::InvalidConstruction(
                "grid and values have different lengths".into(),
            ));
        }
        if grid.len() < 2 {
            return Err(OrliczError::InvalidConstruction("need at least two table points".into()));
        }
        if grid[0] != 0.0 || values[0] != 0.0 {
            return Err(OrliczError::InvalidConstruction("table must start at (0, 0)".into()));
        }
        for w in grid.windows(2) {
            if !(w[0] < w[1]) {
                return Err(OrliczError::InvalidConstruction(
                    "table abscissae must be strictly increasing".into(),
                ));
            }
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(OrliczError::InvalidConstruction(
                "table values must be finite and nonnegative".into(),
            ));
        }
        // Convexity = nondecreasing chord slopes; reject rather than repair.
        let mut prev_slope = f64::NEG_INFINITY;
        for i in 1..grid.len() {
            let slope = (values[i] - values[i - 1]) / (grid[i] - grid[i - 1]);
            if slope < prev_slope - 1e-12 * prev_slope.abs().max(1.0) {
                return Err(OrliczError::InvalidConstruction(format!(
                    "convexity violated near x = {}",
                    grid[i]
                )));
            }
            prev_slope = prev_slope.max(slope);
        }
        let last_slope =
            (values[grid.len() - 1] - values[grid.len() - 2]) / (grid[grid.len() - 1] - grid[grid.len() - 2]);
        if last_slope <= 0.0 {
            return Err(OrliczError::InvalidConstruction(
                "final slope must be positive so the function tends to infinity".into(),
            ));
        }
        Ok(TabulatedOrlicz { grid, values })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn eval(&self, x: f64) -> f64 {
        let n = self.grid.len();
        if x >= self.grid[n - 1] {
            return self.values[n - 1] + self.last_slope() * (x - self.grid[n - 1]);
        }
        let i = self.grid.partition_point(|&g| g <= x);
        if i == 0 {
            return self.values[0];
        }
        let (x0, x1) = (self.grid[i - 1], self.grid[i]);
        let (y0, y1) = (self.values[i - 1], self.values[i]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// Right-derivative: slope of the segment to the right of `x`.
    fn derivative(&self, x: f64) -> f64 {
        let n = self.grid.len();
        if x >= self.grid[n - 1] {
            return self.last_slope();
        }
        let i = self.grid.partition_point(|&g| g <= x).min(n - 1);
        let i = i.max(1);
        (self.values[i] - self.values[i - 1]) / (self.grid[i] - self.grid[i - 1])
    }

    pub fn last_slope(&self) -> f64 {
        let n = self.grid.len();
        (self.values[n - 1] - self.values[n - 2]) / (self.grid[n - 1] - self.grid[n - 2])
    }
}

/// An evaluable Orlicz function.
///
/// Beyond the user-facing kinds, two closure kinds keep convex conjugation
/// inside the type: `Threshold` (zero up to a bound, `+inf` beyond — the
/// conjugate of a linear function) and `Entropy` (`y ln y − y + 1` past 1 —
/// the conjugate of `eˣ − 1`).
#[derive(Debug, Clone, PartialEq)]
pub enum OrliczFunction {
    /// Φ(x) = x^p with p ≥ 1.
    Power { p: f64 },
    /// Φ(x) = c·x^p with c > 0, p ≥ 1.
    PowerScaled { c: f64, p: f64 },
    /// Φ(x) = eˣ − 1.
    ExpMinusOne,
    /// Pointwise maximum of two Orlicz functions.
    MaxOf(Box<OrliczFunction>, Box<OrliczFunction>),
    /// Piecewise-linear table.
    Tabulated(TabulatedOrlicz),
    /// Φ(x) = 0 for x ≤ bound, +inf beyond.
    Threshold { bound: f64 },
    /// Φ(x) = x ln x − x + 1 for x ≥ 1, 0 below.
    Entropy,
}

impl OrliczFunction {
    pub fn power(p: f64) -> Result<Self, OrliczError> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(OrliczError::InvalidConstruction(format!("power exponent {p} must be ≥ 1")));
        }
        Ok(OrliczFunction::Power { p })
    }

    pub fn power_scaled(c: f64, p: f64) -> Result<Self, OrliczError> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(OrliczError::InvalidConstruction(format!("scale {c} must be positive")));
        }
        if !(p >= 1.0) || !p.is_finite() {
            return Err(OrliczError::InvalidConstruction(format!("power exponent {p} must be ≥ 1")));
        }
        Ok(OrliczFunction::PowerScaled { c, p })
    }

    pub fn exp_minus_one() -> Self {
        OrliczFunction::ExpMinusOne
    }

    pub fn max_of(left: OrliczFunction, right: OrliczFunction) -> Self {
        OrliczFunction::MaxOf(Box::new(left), Box::new(right))
    }

    pub fn tabulated(grid: Vec<f64>, values: Vec<f64>) -> Result<Self, OrliczError> {
        Ok(OrliczFunction::Tabulated(TabulatedOrlicz::new(grid, values)?))
    }

    pub fn threshold(bound: f64) -> Result<Self, OrliczError> {
        if !(bound > 0.0) || !bound.is_finite() {
            return Err(OrliczError::InvalidConstruction(format!("threshold {bound} must be positive")));
        }
        Ok(OrliczFunction::Threshold { bound })
    }

    /// Φ(x), extended-real valued. Arguments are nonnegative by contract.
    pub fn eval(&self, x: f64) -> f64 {
        debug_assert!(x >= 0.0, "Orlicz functions are defined on [0, ∞)");
        match self {
            OrliczFunction::Power { p } => x.powf(*p),
            OrliczFunction::PowerScaled { c, p } => c * x.powf(*p),
            OrliczFunction::ExpMinusOne => x.exp_m1(),
            OrliczFunction::MaxOf(a, b) => a.eval(x).max(b.eval(x)),
            OrliczFunction::Tabulated(t) => t.eval(x),
            OrliczFunction::Threshold { bound } => {
                if x <= *bound {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            OrliczFunction::Entropy => {
                if x <= 1.0 {
                    0.0
                } else {
                    x * x.ln() - x + 1.0
                }
            }
        }
    }

    /// Right-derivative Φ′(x) (a subgradient selector at kinks).
    pub fn derivative(&self, x: f64) -> f64 {
        debug_assert!(x >= 0.0);
        match self {
            OrliczFunction::Power { p } => {
                if *p == 1.0 {
                    1.0
                } else {
                    p * x.powf(p - 1.0)
                }
            }
            OrliczFunction::PowerScaled { c, p } => {
                if *p == 1.0 {
                    *c
                } else {
                    c * p * x.powf(p - 1.0)
                }
            }
            OrliczFunction::ExpMinusOne => x.exp(),
            OrliczFunction::MaxOf(a, b) => {
                let (fa, fb) = (a.eval(x), b.eval(x));
                if fa > fb {
                    a.derivative(x)
                } else if fb > fa {
                    b.derivative(x)
                } else {
                    a.derivative(x).max(b.derivative(x))
                }
            }
            OrliczFunction::Tabulated(t) => t.derivative(x),
            OrliczFunction::Threshold { bound } => {
                if x < *bound {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            OrliczFunction::Entropy => {
                if x <= 1.0 {
                    0.0
                } else {
                    x.ln()
                }
            }
        }
    }

    /// Generalized inverse `Φ⁻¹(t) = inf { x ≥ 0 : Φ(x) > t }`, right-continuous
    /// in the sense that flat segments map to their right endpoint.
    ///
    /// Closed forms for power kinds; bisection to relative tolerance 1e-12
    /// otherwise.
    pub fn inverse(&self, t: f64) -> Result<f64, OrliczError> {
        debug_assert!(t >= 0.0);
        match self {
            OrliczFunction::Power { p } => Ok(t.powf(1.0 / p)),
            OrliczFunction::PowerScaled { c, p } => Ok((t / c).powf(1.0 / p)),
            OrliczFunction::ExpMinusOne => Ok(t.ln_1p()),
            OrliczFunction::Threshold { bound } => Ok(*bound),
            // inf over a union: the smaller of the two thresholds.
            OrliczFunction::MaxOf(a, b) => Ok(a.inverse(t)?.min(b.inverse(t)?)),
            _ => self.inverse_bisect(t),
        }
    }

    fn inverse_bisect(&self, t: f64) -> Result<f64, OrliczError> {
        let mut hi = 1.0;
        let mut guard = 0;
        while self.eval(hi) <= t {
            hi *= 2.0;
            guard += 1;
            if guard > 1100 {
                return Err(OrliczError::Unbounded(t));
            }
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.eval(mid) > t {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 1e-12 * hi.max(1e-300) {
                break;
            }
        }
        Ok(lo)
    }

    /// lim_{x→0⁺} Φ(x)/x, resolved analytically per kind.
    pub fn limit_ratio_at_zero(&self) -> f64 {
        match self {
            OrliczFunction::Power { p } => {
                if *p > 1.0 {
                    0.0
                } else {
                    1.0
                }
            }
            OrliczFunction::PowerScaled { c, p } => {
                if *p > 1.0 {
                    0.0
                } else {
                    *c
                }
            }
            OrliczFunction::ExpMinusOne => 1.0,
            OrliczFunction::MaxOf(a, b) => a.limit_ratio_at_zero().max(b.limit_ratio_at_zero()),
            OrliczFunction::Tabulated(t) => t.values()[1] / t.grid()[1],
            OrliczFunction::Threshold { .. } => 0.0,
            OrliczFunction::Entropy => 0.0,
        }
    }

    /// Sampled estimate of the ratio limit: Richardson-style evaluation at
    /// `x = 10^{-k}`, k = 2..10. By convexity the samples are nonincreasing
    /// in k; classified as 0 when the last sample drops below 1e-9.
    pub fn limit_ratio_at_zero_sampled(&self) -> f64 {
        let mut last = f64::INFINITY;
        for k in 2..=10 {
            let x = 10f64.powi(-k);
            let ratio = self.eval(x) / x;
            debug_assert!(
                ratio <= last * (1.0 + 1e-9) + 1e-300,
                "convexity forces nonincreasing ratio samples"
            );
            last = ratio;
        }
        if last < 1e-9 {
            0.0
        } else {
            last
        }
    }

    /// Check the defining invariants on a sampled grid: Φ(0) = 0, convexity,
    /// monotonicity, divergence at infinity, nondecreasing derivative.
    pub fn validate(&self, spec: &crate::grid::GridSpec) -> Result<(), OrliczError> {
        if self.eval(0.0) != 0.0 {
            return Err(OrliczError::InvalidConstruction("Φ(0) must be 0".into()));
        }
        let pts = spec.points();
        let mut prev_val = 0.0;
        let mut prev_der = 0.0;
        for &x in &pts {
            let v = self.eval(x);
            if v.is_nan() || v < 0.0 {
                return Err(OrliczError::InvalidConstruction(format!("Φ({x}) is not in [0, ∞]")));
            }
            if v < prev_val {
                return Err(OrliczError::InvalidConstruction(format!("Φ decreases near x = {x}")));
            }
            prev_val = v;
            let d = self.derivative(x);
            if d.is_finite() && prev_der.is_finite() && d < prev_der * (1.0 - 1e-12) - 1e-300 {
                return Err(OrliczError::InvalidConstruction(format!(
                    "derivative decreases near x = {x}"
                )));
            }
            if d.is_finite() {
                prev_der = d;
            }
        }
        // Convexity on sampled triples.
        for w in pts.windows(2) {
            let (x, y) = (w[0], w[1]);
            for t in [0.25, 0.5, 0.75] {
                let mid = t * x + (1.0 - t) * y;
                let lhs = self.eval(mid);
                let rhs = t * self.eval(x) + (1.0 - t) * self.eval(y);
                if lhs.is_finite() && lhs > rhs + 1e-12 * rhs.abs().max(1.0) {
                    return Err(OrliczError::InvalidConstruction(format!(
                        "convexity violated between {x} and {y}"
                    )));
                }
            }
        }
        // Divergence: Φ must exceed any bound for large arguments.
        let mut x = 1.0;
        let mut diverges = false;
        for _ in 0..400 {
            if self.eval(x) > 1e6 {
                diverges = true;
                break;
            }
            x *= 4.0;
        }
        if !diverges {
            return Err(OrliczError::InvalidConstruction("Φ does not tend to infinity".into()));
        }
        Ok(())
    }

    /// Pointwise maximum, again an Orlicz function (max of convex is convex).
    pub fn max_combine(phi1: &OrliczFunction, phi2: &OrliczFunction) -> OrliczFunction {
        OrliczFunction::max_of(phi1.clone(), phi2.clone())
    }
}

impl std::fmt::Display for OrliczFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrliczFunction::Power { p } => write!(f, "power:{p}"),
            OrliczFunction::PowerScaled { c, p } => write!(f, "cpower:{c},{p}"),
            OrliczFunction::ExpMinusOne => write!(f, "expm1"),
            OrliczFunction::MaxOf(a, b) => write!(f, "max({a},{b})"),
            OrliczFunction::Tabulated(t) => write!(f, "table:<{} points>", t.grid().len()),
            OrliczFunction::Threshold { bound } => write!(f, "threshold:{bound}"),
            OrliczFunction::Entropy => write!(f, "entropy"),
        }
    }
}
