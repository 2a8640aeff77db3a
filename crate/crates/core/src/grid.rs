//! Logarithmic sampling grids shared by the sampled-evidence checks.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

/// A logarithmic grid of `per_decade` points per decade covering
/// `10^decade_lo ..= 10^decade_hi`.
///
/// The default covers `1e-8 ..= 1e8` at 400 points per decade, which spans
/// both the order-at-zero and order-at-infinity regimes of the embedding
/// checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub decade_lo: i32,
    pub decade_hi: i32,
    pub per_decade: u32,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { decade_lo: -8, decade_hi: 8, per_decade: 400 }
    }
}

impl GridSpec {
    pub fn new(decade_lo: i32, decade_hi: i32, per_decade: u32) -> Result<Self, GridError> {
        let spec = GridSpec { decade_lo, decade_hi, per_decade };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), GridError> {
        if self.per_decade == 0 {
            return Err(GridError::InvalidGrid("per_decade must be positive".into()));
        }
        if self.decade_hi <= self.decade_lo {
            return Err(GridError::InvalidGrid(format!(
                "decade range [{}, {}] is empty or non-increasing",
                self.decade_lo, self.decade_hi
            )));
        }
        Ok(())
    }

    /// Strictly increasing sample points `10^(decade_lo + j/per_decade)`,
    /// endpoints included.
    pub fn points(&self) -> Vec<f64> {
        let steps = (self.decade_hi - self.decade_lo) as i64 * self.per_decade as i64;
        (0..=steps)
            .map(|j| {
                let e = self.decade_lo as f64 + j as f64 / self.per_decade as f64;
                10f64.powf(e)
            })
            .collect()
    }
}

/// Log-spaced points between `lo` and `hi` (both positive), endpoints
/// included; used for dense verification sweeps over ad-hoc ranges.
pub fn log_points(lo: f64, hi: f64, per_decade: u32) -> Vec<f64> {
    debug_assert!(lo > 0.0 && hi > lo);
    let decades = (hi / lo).log10();
    let steps = (decades * per_decade as f64).ceil().max(1.0) as i64;
    (0..=steps)
        .map(|j| lo * 10f64.powf(decades * j as f64 / steps as f64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_spans_declared_decades() {
        let pts = GridSpec::default().points();
        assert_eq!(pts.len(), 6401);
        assert!((pts[0] - 1e-8).abs() < 1e-20);
        assert!((pts[pts.len() - 1] - 1e8).abs() < 1e-4);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_empty_or_reversed() {
        assert!(GridSpec::new(0, 0, 10).is_err());
        assert!(GridSpec::new(2, -2, 10).is_err());
        assert!(GridSpec::new(-1, 1, 0).is_err());
    }
}
