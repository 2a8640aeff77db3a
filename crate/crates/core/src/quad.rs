//! Adaptive Gauss quadrature used by the modular integrals and the
//! annihilator inner products.

/// Result of an adaptive quadrature run. `converged` is false when the depth
/// cap was hit before the local error estimates dropped below the tolerance.
#[derive(Debug, Clone, Copy)]
pub struct QuadOutcome {
    pub value: f64,
    pub converged: bool,
}

// 5-point Gauss-Legendre nodes/weights on [-1, 1].
const GL5_NODES: [f64; 5] = [
    -0.906179845938664,
    -0.5384693101056831,
    0.0,
    0.5384693101056831,
    0.906179845938664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.23692688505618908,
    0.47862867049936647,
    0.5688888888888889,
    0.47862867049936647,
    0.23692688505618908,
];

fn gauss5(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = 0.0;
    for (&x, &w) in GL5_NODES.iter().zip(GL5_WEIGHTS.iter()) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol` by recursive
/// bisection of 5-point Gauss panels.
///
/// Infinities propagate: a panel evaluating to `+inf` makes the whole result
/// `+inf` (used by the modular, which is infinite as soon as the integrand
/// is infinite on a set of positive measure). NaN also propagates, with
/// `converged = false`.
pub fn adaptive_gauss(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> QuadOutcome {
    if a == b {
        return QuadOutcome { value: 0.0, converged: true };
    }
    let whole = gauss5(f, a, b);
    recurse(f, a, b, whole, tol, 42)
}

fn recurse(f: &impl Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> QuadOutcome {
    if whole.is_infinite() {
        return QuadOutcome { value: whole, converged: true };
    }
    if whole.is_nan() {
        return QuadOutcome { value: whole, converged: false };
    }
    let mid = 0.5 * (a + b);
    let left = gauss5(f, a, mid);
    let right = gauss5(f, mid, b);
    if left.is_infinite() || right.is_infinite() {
        return QuadOutcome { value: f64::INFINITY, converged: true };
    }
    let err = (left + right - whole).abs();
    if err <= tol || mid <= a || mid >= b {
        return QuadOutcome { value: left + right, converged: true };
    }
    if depth == 0 {
        return QuadOutcome { value: left + right, converged: err <= tol.max(1e-300) };
    }
    let l = recurse(f, a, mid, left, 0.5 * tol, depth - 1);
    let r = recurse(f, mid, b, right, 0.5 * tol, depth - 1);
    QuadOutcome { value: l.value + r.value, converged: l.converged && r.converged }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let q = adaptive_gauss(&|x| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, 1e-12);
        // antiderivative x^4/4 - x^2 + x
        let exact = (81.0 / 4.0 - 9.0 + 3.0) - (0.25 - 1.0 - 1.0);
        assert!(q.converged);
        assert!((q.value - exact).abs() < 1e-10);
    }

    #[test]
    fn integrates_oscillatory_to_tolerance() {
        let q = adaptive_gauss(&|x: f64| (5.0 * x).sin(), 0.0, 2.0, 1e-12);
        let exact = (1.0 - (10.0f64).cos()) / 5.0;
        assert!(q.converged);
        assert!((q.value - exact).abs() < 1e-10);
    }

    #[test]
    fn infinity_propagates() {
        let q = adaptive_gauss(&|x: f64| if x > 0.5 { f64::INFINITY } else { 1.0 }, 0.0, 1.0, 1e-10);
        assert!(q.value.is_infinite());
    }
}
