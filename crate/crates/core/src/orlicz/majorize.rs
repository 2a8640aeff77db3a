//! Majorization orders between Orlicz functions and the embedding verdicts
//! they induce for the three measure regimes.

use super::OrliczFunction;
use crate::grid::log_points;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MajorizationMode {
    AtZero,
    AtInfinity,
    Global,
}

/// Witness for Φ₂(x) ≤ b·Φ₁(a·x) on the mode's x-range. `x0` is `None` in
/// global mode.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorizationWitness {
    pub a: f64,
    pub b: f64,
    pub x0: Option<f64>,
    pub mode: MajorizationMode,
}

/// Search outcome. Absence of a witness means "none found in the search box",
/// not disproof; when a single sampled x violates the inequality for every
/// searched (a, b) pair it is attached as a refutation certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorizationOutcome {
    pub witness: Option<MajorizationWitness>,
    pub refutation: Option<f64>,
}

const X0_GRID: [f64; 13] = [
    1e6, 1e5, 1e4, 1e3, 1e2, 1e1, 1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6,
];

/// (a, b) candidates over {10^-3 .. 10^3}², ordered so the simplest pairs
/// (nearest to (1, 1) in log distance) are tried first.
fn ab_candidates() -> Vec<(f64, f64)> {
    let mut pairs = Vec::with_capacity(49);
    for ea in -3i32..=3 {
        for eb in -3i32..=3 {
            pairs.push((ea, eb));
        }
    }
    pairs.sort_by_key(|&(ea, eb)| (ea.abs().max(eb.abs()), ea.abs() + eb.abs(), ea, eb));
    pairs.into_iter().map(|(ea, eb)| (10f64.powi(ea), 10f64.powi(eb))).collect()
}

fn holds_on(phi1: &OrliczFunction, phi2: &OrliczFunction, a: f64, b: f64, xs: &[f64]) -> bool {
    xs.iter().all(|&x| phi2.eval(x) <= b * phi1.eval(a * x))
}

/// Verification samples for a mode. The range extends well past the search
/// box so that violations forced by extreme (a, b) pairs are still caught.
fn verification_grid(mode: MajorizationMode, x0: f64) -> Vec<f64> {
    match mode {
        MajorizationMode::AtZero => log_points(x0 * 1e-12, x0, 50),
        MajorizationMode::AtInfinity => log_points(x0, x0 * 1e12, 50),
        MajorizationMode::Global => log_points(1e-11, 1e11, 50),
    }
}

/// Search for a witness that Φ₁ majorizes Φ₂ in the given mode.
///
/// (a, b) range over a logarithmic box, x0 over 10^-6..10^6 preferring the
/// largest (AtZero) or smallest (AtInfinity) threshold that verifies on a
/// dense grid. Sampled evidence, not proof.
pub fn majorizes(
    phi1: &OrliczFunction,
    phi2: &OrliczFunction,
    mode: MajorizationMode,
) -> MajorizationOutcome {
    let pairs = ab_candidates();
    let witness = 'search: {
        for &(a, b) in &pairs {
            match mode {
                MajorizationMode::Global => {
                    let xs = verification_grid(mode, 1.0);
                    if holds_on(phi1, phi2, a, b, &xs) {
                        break 'search Some(MajorizationWitness { a, b, x0: None, mode });
                    }
                }
                MajorizationMode::AtZero => {
                    for &x0 in &X0_GRID {
                        let xs = verification_grid(mode, x0);
                        if holds_on(phi1, phi2, a, b, &xs) {
                            break 'search Some(MajorizationWitness { a, b, x0: Some(x0), mode });
                        }
                    }
                }
                MajorizationMode::AtInfinity => {
                    for &x0 in X0_GRID.iter().rev() {
                        let xs = verification_grid(mode, x0);
                        if holds_on(phi1, phi2, a, b, &xs) {
                            break 'search Some(MajorizationWitness { a, b, x0: Some(x0), mode });
                        }
                    }
                }
            }
        }
        None
    };

    let refutation = if witness.is_none() {
        // A single x violating the inequality for every searched pair; scan
        // from the side where violations accumulate for the given mode.
        let xs = match mode {
            MajorizationMode::AtZero => log_points(1e-18, 1e-6, 20),
            MajorizationMode::AtInfinity => log_points(1e6, 1e18, 20),
            MajorizationMode::Global => log_points(1e-18, 1e18, 20),
        };
        xs.into_iter()
            .find(|&x| pairs.iter().all(|&(a, b)| phi2.eval(x) > b * phi1.eval(a * x)))
    } else {
        None
    };

    MajorizationOutcome { witness, refutation }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    /// Non-atomic with infinite total mass (Lebesgue on ℝ): global order.
    NonAtomicInfinite,
    /// Purely atomic with atoms of positive mass (counting measure): order at 0.
    AtomicPositive,
    /// Non-atomic with finite total mass: order at infinity.
    NonAtomicFinite,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingReport {
    pub embedded: bool,
    pub measure_kind: MeasureKind,
    pub mode: MajorizationMode,
    pub witness: Option<MajorizationWitness>,
    pub refutation: Option<f64>,
}

/// Does L^{Φ₁} ⊆ L^{Φ₂} hold for the given measure kind? Dispatches to the
/// majorization order matching the regime and carries its evidence.
pub fn embedding_verdict(
    phi1: &OrliczFunction,
    phi2: &OrliczFunction,
    measure_kind: MeasureKind,
) -> EmbeddingReport {
    let mode = match measure_kind {
        MeasureKind::NonAtomicInfinite => MajorizationMode::Global,
        MeasureKind::AtomicPositive => MajorizationMode::AtZero,
        MeasureKind::NonAtomicFinite => MajorizationMode::AtInfinity,
    };
    let outcome = majorizes(phi1, phi2, mode);
    EmbeddingReport {
        embedded: outcome.witness.is_some(),
        measure_kind,
        mode,
        witness: outcome.witness,
        refutation: outcome.refutation,
    }
}
