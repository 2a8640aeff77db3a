//! Convex conjugation Ψ(y) = sup_{x≥0} (xy − Φ(x)) and the Young gap.

use super::{OrliczError, OrliczFunction, TabulatedOrlicz};
use crate::grid::GridSpec;

/// Conjugate exponent data for c·x^p with p > 1: the conjugate is c'·y^q with
/// q = p/(p−1) and c' = ((p−1)/p) · (c·p)^(−1/(p−1)).
fn power_conjugate(c: f64, p: f64) -> (f64, f64) {
    let q = p / (p - 1.0);
    let c_conj = ((p - 1.0) / p) * (c * p).powf(-1.0 / (p - 1.0));
    (c_conj, q)
}

/// Complementary Orlicz function.
///
/// Closed-form kinds conjugate in closed form; `MaxOf` and `Tabulated` are
/// sampled into a table over `grid_spec` (prefixed with the anchor point
/// `(0, 0)`, truncated at the first ordinate where the supremum diverges).
pub fn conjugate(phi: &OrliczFunction, grid_spec: &GridSpec) -> Result<OrliczFunction, OrliczError> {
    grid_spec.validate().map_err(|e| OrliczError::InvalidGrid(e.to_string()))?;
    match phi {
        OrliczFunction::Power { p } => {
            if *p == 1.0 {
                OrliczFunction::threshold(1.0)
            } else {
                let (c, q) = power_conjugate(1.0, *p);
                OrliczFunction::power_scaled(c, q)
            }
        }
        OrliczFunction::PowerScaled { c, p } => {
            if *p == 1.0 {
                OrliczFunction::threshold(*c)
            } else {
                let (cc, q) = power_conjugate(*c, *p);
                OrliczFunction::power_scaled(cc, q)
            }
        }
        OrliczFunction::ExpMinusOne => Ok(OrliczFunction::Entropy),
        OrliczFunction::Entropy => Ok(OrliczFunction::ExpMinusOne),
        OrliczFunction::Threshold { bound } => OrliczFunction::power_scaled(*bound, 1.0),
        OrliczFunction::MaxOf(..) | OrliczFunction::Tabulated(..) => {
            let mut grid = vec![0.0];
            let mut values = vec![0.0];
            for y in grid_spec.points() {
                let v = conjugate_at(phi, y)?;
                if !v.is_finite() {
                    break;
                }
                grid.push(y);
                values.push(v);
            }
            if grid.len() < 3 {
                return Err(OrliczError::ConjugateNotRepresentable(
                    "supremum diverges below the first grid point".into(),
                ));
            }
            Ok(OrliczFunction::Tabulated(TabulatedOrlicz::new(grid, values)?))
        }
    }
}

/// Pointwise conjugate value Ψ(y).
///
/// For kinds without a closed form the supremum of the concave map
/// x ↦ xy − Φ(x) is located by bisecting the nondecreasing right-derivative.
pub fn conjugate_at(phi: &OrliczFunction, y: f64) -> Result<f64, OrliczError> {
    debug_assert!(y >= 0.0);
    match phi {
        OrliczFunction::Power { .. }
        | OrliczFunction::PowerScaled { .. }
        | OrliczFunction::ExpMinusOne
        | OrliczFunction::Entropy
        | OrliczFunction::Threshold { .. } => {
            let psi = conjugate(phi, &GridSpec::default())?;
            Ok(psi.eval(y))
        }
        _ => Ok(legendre_sup(phi, y)),
    }
}

fn legendre_sup(phi: &OrliczFunction, y: f64) -> f64 {
    if y == 0.0 {
        return 0.0;
    }
    // Find an upper bracket where the slope has passed y.
    let mut hi = 1.0;
    let mut found = false;
    for _ in 0..80 {
        if phi.derivative(hi) >= y {
            found = true;
            break;
        }
        hi *= 2.0;
    }
    if !found {
        // Slope never reaches y: xy − Φ(x) increases without bound.
        return f64::INFINITY;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if phi.derivative(mid) >= y {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-14 * hi.max(1e-300) {
            break;
        }
    }
    let x = 0.5 * (lo + hi);
    let v = x * y - phi.eval(x);
    v.max(0.0)
}

/// Young gap Φ(x) + Ψ(y) − xy; nonnegative, zero exactly on the graph of the
/// derivative.
///
/// For tabulated Φ the conjugate is only determined up to the table's final
/// slope; larger ordinates are an error rather than an extrapolation.
pub fn young_gap(phi: &OrliczFunction, x: f64, y: f64) -> Result<f64, OrliczError> {
    debug_assert!(x >= 0.0 && y >= 0.0);
    if let OrliczFunction::Tabulated(t) = phi {
        let max_slope = t.last_slope();
        if y > max_slope {
            return Err(OrliczError::OutOfTabulatedRange(y, max_slope));
        }
    }
    let psi_y = conjugate_at(phi, y)?;
    Ok(phi.eval(x) + psi_y - x * y)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: grid maximization of xy − Φ(x) over x ∈ [0, 10y]
    /// at step 1e-5, divergence flagged past 1e12.
    fn conjugate_oracle(phi: &OrliczFunction, y: f64) -> f64 {
        let hi = (10.0 * y).max(10.0);
        let steps = (hi / 1e-5) as u64;
        let mut best = 0.0f64;
        for i in 0..=steps {
            let x = i as f64 * 1e-5;
            let v = x * y - phi.eval(x);
            if v > best {
                best = v;
            }
            if best > 1e12 {
                return f64::INFINITY;
            }
        }
        best
    }

    #[test]
    fn conjugate_of_half_square_is_half_square() {
        let phi = OrliczFunction::power_scaled(0.5, 2.0).unwrap();
        let psi = conjugate(&phi, &GridSpec::default()).unwrap();
        for y in [0.5, 1.0, 2.0] {
            let expect = conjugate_oracle(&phi, y);
            assert!(
                (psi.eval(y) - expect).abs() <= 1e-8 * expect.max(1.0),
                "psi({y}) = {} vs oracle {expect}",
                psi.eval(y)
            );
            assert!((psi.eval(y) - 0.5 * y * y).abs() < 1e-12);
        }
    }

    #[test]
    fn conjugate_of_identity_jumps_to_infinity() {
        let phi = OrliczFunction::power(1.0).unwrap();
        let psi = conjugate(&phi, &GridSpec::default()).unwrap();
        for y in [0.2, 0.9, 1.0] {
            assert_eq!(psi.eval(y), 0.0);
            assert_eq!(conjugate_oracle(&phi, y), 0.0);
        }
        assert!(psi.eval(1.1).is_infinite());
        assert!(conjugate_oracle(&phi, 1.1).is_infinite());
    }

    #[test]
    fn conjugate_vanishes_at_zero() {
        for phi in [
            OrliczFunction::power(1.0).unwrap(),
            OrliczFunction::power(2.0).unwrap(),
            OrliczFunction::exp_minus_one(),
        ] {
            let psi = conjugate(&phi, &GridSpec::default()).unwrap();
            assert_eq!(psi.eval(0.0), 0.0);
        }
    }

    #[test]
    fn expm1_conjugate_matches_oracle() {
        let phi = OrliczFunction::exp_minus_one();
        let psi = conjugate(&phi, &GridSpec::default()).unwrap();
        for y in [0.5, 1.0, 2.0, 3.0] {
            let expect = conjugate_oracle(&phi, y);
            assert!((psi.eval(y) - expect).abs() <= 1e-8 * expect.max(1.0));
        }
        // y ln y − y + 1 at y = 2.
        assert!((psi.eval(2.0) - (2.0 * 2f64.ln() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn biconjugation_recovers_closed_forms() {
        for phi in [
            OrliczFunction::power(1.5).unwrap(),
            OrliczFunction::power(2.0).unwrap(),
            OrliczFunction::power(3.0).unwrap(),
            OrliczFunction::power_scaled(0.5, 2.0).unwrap(),
            OrliczFunction::exp_minus_one(),
        ] {
            let spec = GridSpec::default();
            let psi2 = conjugate(&conjugate(&phi, &spec).unwrap(), &spec).unwrap();
            for x in [0.1, 0.5, 1.0, 2.0, 10.0] {
                let (a, b) = (phi.eval(x), psi2.eval(x));
                assert!((a - b).abs() <= 1e-6 * a.max(1.0), "x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn sampled_conjugate_of_max_is_valid() {
        let phi = OrliczFunction::max_of(
            OrliczFunction::power(1.0).unwrap(),
            OrliczFunction::power(2.0).unwrap(),
        );
        let spec = GridSpec::new(-4, 2, 60).unwrap();
        let psi = conjugate(&phi, &spec).unwrap();
        psi.validate(&GridSpec::new(-3, 1, 10).unwrap()).unwrap();
        // Spot-check against the oracle at interior ordinates.
        for y in [0.5, 1.5, 3.0] {
            let expect = conjugate_oracle(&phi, y);
            assert!((psi.eval(y) - expect).abs() <= 1e-3 * expect.max(1.0));
        }
    }

    #[test]
    fn young_gap_examples() {
        let phi = OrliczFunction::power_scaled(0.5, 2.0).unwrap();
        assert!(young_gap(&phi, 1.0, 1.0).unwrap().abs() <= 1e-9);
        assert!((young_gap(&phi, 1.0, 0.0).unwrap() - 0.5).abs() <= 1e-12);
        for phi in [OrliczFunction::power(2.0).unwrap(), OrliczFunction::exp_minus_one()] {
            assert_eq!(young_gap(&phi, 0.0, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn young_equality_on_derivative_graph() {
        for phi in [
            OrliczFunction::power(1.5).unwrap(),
            OrliczFunction::power(2.0).unwrap(),
            OrliczFunction::power(3.0).unwrap(),
        ] {
            for x in [0.1, 0.5, 1.0, 2.0, 10.0] {
                let gap = young_gap(&phi, x, phi.derivative(x)).unwrap();
                assert!(gap.abs() <= 1e-9, "gap {gap} at x={x} for {phi}");
            }
        }
    }

    #[test]
    fn young_gap_rejects_out_of_table_ordinates() {
        let phi = OrliczFunction::tabulated(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 4.0]).unwrap();
        // last slope is 3: ordinates beyond are undetermined by the table.
        assert!(young_gap(&phi, 0.5, 2.0).is_ok());
        assert!(matches!(
            young_gap(&phi, 0.5, 5.0),
            Err(OrliczError::OutOfTabulatedRange(..))
        ));
    }
}
