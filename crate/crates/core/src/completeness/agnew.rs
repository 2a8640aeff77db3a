//! Explicit step approximants g_ε to a target step χ_[0,a) built from
//! translates of a generator step χ_[0,b), with the exact pointwise error
//! |g − g_ε| = χ_[0, nmb+a) / (2n+1).

use super::CompletenessError;
use crate::norms::{char_norm_closed_form, luxemburg_norm};
use crate::orlicz::OrliczFunction;
use crate::piecewise::{combine_events, Event, PiecewiseFunction};

/// Construction plan: approximate g = χ_[0,a) from the generator χ_[0,b)
/// using n blocks of width m·b, where m is the least integer with m·b > a.
#[derive(Debug, Clone, PartialEq)]
pub struct AgnewPlan {
    pub a: f64,
    pub b: f64,
    pub m: u64,
    pub n: u64,
    pub epsilon: Option<f64>,
}

/// Materialization cap: plans above this would allocate hundreds of millions
/// of segments.
const MAX_MATERIALIZED_N: u64 = 1 << 27;

impl AgnewPlan {
    /// Plan with an explicit block count n.
    pub fn new(a: f64, b: f64, n: u64, epsilon: Option<f64>) -> Result<Self, CompletenessError> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(CompletenessError::InvalidPlan(format!("target width a = {a}")));
        }
        if !(b > 0.0) || !b.is_finite() {
            return Err(CompletenessError::InvalidPlan(format!("generator width b = {b}")));
        }
        if n == 0 {
            return Err(CompletenessError::InvalidPlan("n must be positive".into()));
        }
        if let Some(eps) = epsilon {
            if !(eps > 0.0) {
                return Err(CompletenessError::InvalidPlan(format!("epsilon = {eps}")));
            }
        }
        // Least m with m·b strictly above a.
        let mut m = (a / b).ceil() as u64;
        if m == 0 {
            m = 1;
        }
        while m as f64 * b <= a {
            m += 1;
        }
        debug_assert!((m - 1) as f64 * b <= a);
        Ok(AgnewPlan { a, b, m, n, epsilon })
    }

    /// Plan whose n is the least block count certified by the norm threshold
    /// at d = 2·m·b, so the error norm is below ε.
    pub fn with_threshold(
        phi: &OrliczFunction,
        a: f64,
        b: f64,
        epsilon: f64,
    ) -> Result<Self, CompletenessError> {
        let probe = AgnewPlan::new(a, b, 1, Some(epsilon))?;
        let n = agnew_threshold(phi, epsilon, 2.0 * probe.block_width())?;
        AgnewPlan::new(a, b, n, Some(epsilon))
    }

    /// Block width m·b (strictly above the target width a).
    pub fn block_width(&self) -> f64 {
        self.m as f64 * self.b
    }

    /// Error denominator 2n + 1.
    pub fn denominator(&self) -> f64 {
        2.0 * self.n as f64 + 1.0
    }

    /// Right end of the error support, n·m·b + a.
    pub fn error_support_end(&self) -> f64 {
        self.n as f64 * self.block_width() + self.a
    }
}

/// Least n with ‖χ_[0,nd)/n‖_Φ < ε, found by doubling then binary search
/// (the closed-form norm is nonincreasing in n because Φ(x)/x is
/// nondecreasing).
///
/// Requires the vanishing-ratio regime lim Φ(x)/x = 0; errors otherwise.
pub fn agnew_threshold(
    phi: &OrliczFunction,
    epsilon: f64,
    d: f64,
) -> Result<u64, CompletenessError> {
    if !(epsilon > 0.0) {
        return Err(CompletenessError::InvalidPlan(format!("epsilon = {epsilon}")));
    }
    if !(d > 0.0) {
        return Err(CompletenessError::InvalidPlan(format!("d = {d}")));
    }
    let ratio = phi.limit_ratio_at_zero();
    if ratio > 0.0 {
        return Err(CompletenessError::WrongRegime(ratio));
    }
    let norm_at = |n: u64| -> Result<f64, CompletenessError> {
        Ok(char_norm_closed_form(phi, 1.0 / n as f64, n as f64 * d)?)
    };
    if norm_at(1)? < epsilon {
        return Ok(1);
    }
    let mut hi = 1u64;
    loop {
        hi = hi.saturating_mul(2);
        if hi > 1 << 60 {
            return Err(CompletenessError::SearchExhausted);
        }
        if norm_at(hi)? < epsilon {
            break;
        }
    }
    let mut lo = hi / 2; // norm(lo) ≥ ε, norm(hi) < ε
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if norm_at(mid)? < epsilon {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// The approximant g_ε as an exact piecewise-constant function.
///
/// All interval values are integer multiples of 1/(2n+1); they are obtained
/// by carrying the integer numerators through the interval algebra and
/// dividing once at the end, so each stored value is the correctly rounded
/// true value.
pub fn agnew_approximant(plan: &AgnewPlan) -> Result<PiecewiseFunction, CompletenessError> {
    let scaled = scaled_combination(plan, false)?;
    Ok(scaled.scale_div(plan.denominator()))
}

/// The signed error g − g_ε with g = χ_[0,a), exact by the same integer
/// carry: its values are ±1/(2n+1) to the last bit and |g − g_ε|
/// canonicalizes to a single segment.
pub fn agnew_error_function(plan: &AgnewPlan) -> Result<PiecewiseFunction, CompletenessError> {
    let scaled = scaled_combination(plan, true)?;
    Ok(scaled.scale_div(plan.denominator()))
}

/// Integer-numerator combination: (2n+1)·g_ε, or (2n+1)·(g − g_ε) when
/// `subtract_from_target` is set. All event deltas are integers bounded by
/// 2n+1, so the sweep sums are exact.
fn scaled_combination(
    plan: &AgnewPlan,
    subtract_from_target: bool,
) -> Result<PiecewiseFunction, CompletenessError> {
    if plan.n > MAX_MATERIALIZED_N {
        return Err(CompletenessError::InvalidPlan(format!(
            "n = {} too large to materialize (cap {MAX_MATERIALIZED_N})",
            plan.n
        )));
    }
    let n = plan.n;
    let mb = plan.block_width();
    let d = plan.denominator();
    let sign = if subtract_from_target { -1.0 } else { 1.0 };
    let mut events: Vec<Event> = Vec::with_capacity(4 * n as usize + 2);
    if subtract_from_target {
        // (2n+1)·g = (2n+1)·χ_[0,a)
        events.push(Event { x: 0.0, dslope: 0.0, dintercept: d });
        events.push(Event { x: plan.a, dslope: 0.0, dintercept: -d });
    }
    for k in 0..n {
        // (2n+1)·(1 − (2k+1)/(2n+1)) = 2n − 2k on [k·mb, (k+1)·mb)
        let c = (2 * (n - k)) as f64 * sign;
        events.push(Event { x: k as f64 * mb, dslope: 0.0, dintercept: c });
        events.push(Event { x: (k + 1) as f64 * mb, dslope: 0.0, dintercept: -c });
        // −(2n+1)·(1 − (2k+2)/(2n+1)) = −(2n − 2k − 1) on [k·mb + a, (k+1)·mb + a)
        let e = (2 * (n - k) - 1) as f64 * sign;
        events.push(Event { x: k as f64 * mb + plan.a, dslope: 0.0, dintercept: -e });
        events.push(Event { x: (k + 1) as f64 * mb + plan.a, dslope: 0.0, dintercept: e });
    }
    Ok(combine_events(events))
}

/// One generator translate in the span decomposition of g_ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpanTerm {
    /// Translation amount: the term is coefficient · τ_lambda χ_[0,b).
    pub lambda: f64,
    pub coefficient: f64,
}

/// g_ε as an explicit linear combination of translates of the generator
/// χ_[0,b): each block χ_[k·mb, (k+1)·mb) splits into m disjoint translates.
/// This materializes the span membership as a checkable artifact.
pub fn agnew_span_combination(plan: &AgnewPlan) -> Result<Vec<SpanTerm>, CompletenessError> {
    if plan.n.saturating_mul(plan.m) > 1 << 24 {
        return Err(CompletenessError::InvalidPlan(
            "span decomposition too large to materialize".into(),
        ));
    }
    let n = plan.n;
    let mb = plan.block_width();
    let d = plan.denominator();
    let mut terms = Vec::with_capacity(2 * (n * plan.m) as usize);
    for k in 0..n {
        let c = (2 * (n - k)) as f64 / d;
        let e = (2 * (n - k) - 1) as f64 / d;
        for i in 0..plan.m {
            let offset = i as f64 * plan.b;
            terms.push(SpanTerm { lambda: k as f64 * mb + offset, coefficient: c });
            terms.push(SpanTerm { lambda: k as f64 * mb + plan.a + offset, coefficient: -e });
        }
    }
    Ok(terms)
}

/// Luxemburg norm of the approximation error g − g_ε.
pub fn agnew_error_norm(phi: &OrliczFunction, plan: &AgnewPlan) -> Result<f64, CompletenessError> {
    let err = agnew_error_function(plan)?;
    Ok(luxemburg_norm(phi, &err)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::piecewise::linear_combine;

    #[test]
    fn plan_computes_least_block_multiplier() {
        let p = AgnewPlan::new(0.75, 1.0, 1, None).unwrap();
        assert_eq!(p.m, 1);
        let p = AgnewPlan::new(0.5, 0.5, 1, None).unwrap();
        assert_eq!(p.m, 2); // m·b must be strictly above a
        let p = AgnewPlan::new(2.4, 0.7, 1, None).unwrap();
        assert_eq!(p.m, 4);
        assert!(AgnewPlan::new(0.0, 1.0, 1, None).is_err());
        assert!(AgnewPlan::new(1.0, 1.0, 0, None).is_err());
        assert!(AgnewPlan::new(1.0, 1.0, 3, Some(-0.5)).is_err());
    }

    #[test]
    fn threshold_examples() {
        let p2 = OrliczFunction::power(2.0).unwrap();
        assert_eq!(agnew_threshold(&p2, 0.1, 2.0).unwrap(), 201);
        assert_eq!(agnew_threshold(&p2, 1.0, 1.0).unwrap(), 2);
        let p3 = OrliczFunction::power(3.0).unwrap();
        assert_eq!(agnew_threshold(&p3, 0.5, 1.0).unwrap(), 3);
    }

    #[test]
    fn threshold_requires_vanishing_ratio() {
        let p1 = OrliczFunction::power(1.0).unwrap();
        assert!(matches!(
            agnew_threshold(&p1, 0.1, 1.0),
            Err(CompletenessError::WrongRegime(_))
        ));
    }

    #[test]
    fn threshold_is_least_admissible() {
        let p2 = OrliczFunction::power(2.0).unwrap();
        for (eps, d) in [(0.1, 2.0), (0.37, 1.3), (0.01, 0.5)] {
            let n = agnew_threshold(&p2, eps, d).unwrap();
            let norm = |n: u64| char_norm_closed_form(&p2, 1.0 / n as f64, n as f64 * d).unwrap();
            assert!(norm(n) < eps);
            if n > 1 {
                assert!(norm(n - 1) >= eps);
            }
        }
    }

    #[test]
    fn sufficient_n_from_the_ratio_bound_also_satisfies_the_inequality() {
        // With Φ = x² and Φ(x)/x = x below δ = ε/d, any n past 1/(ε·δ)
        // satisfies the norm bound; cross-check the direct search against it.
        let p2 = OrliczFunction::power(2.0).unwrap();
        for (eps, d) in [(0.1, 2.0), (0.05, 1.0)] {
            let delta = eps / d;
            let n_from_ratio = (1.0 / (eps * delta)).ceil() as u64 + 1;
            let norm = char_norm_closed_form(&p2, 1.0 / n_from_ratio as f64, n_from_ratio as f64 * d)
                .unwrap();
            assert!(norm < eps);
            assert!(agnew_threshold(&p2, eps, d).unwrap() <= n_from_ratio);
        }
    }

    #[test]
    fn single_block_approximant_matches_hand_formula() {
        // n = 1, m·b = 1, a = 0.75: g_ε = (2/3)χ_[0,1) − (1/3)χ_[0.75,1.75)
        let plan = AgnewPlan::new(0.75, 1.0, 1, None).unwrap();
        let ge = agnew_approximant(&plan).unwrap();
        let expect = linear_combine(&[
            (2.0 / 3.0, &PiecewiseFunction::step(0.0, 1.0, 1.0).unwrap()),
            (-(1.0 / 3.0), &PiecewiseFunction::step(0.75, 1.75, 1.0).unwrap()),
        ])
        .unwrap();
        for x in [0.1, 0.5, 0.8, 1.2, 1.6] {
            assert!((ge.eval(x) - expect.eval(x)).abs() <= 1e-15, "x = {x}");
        }
        // pointwise error 1/3 everywhere on the support
        let g = PiecewiseFunction::step(0.0, 0.75, 1.0).unwrap();
        for x in [0.0, 0.3, 0.74, 0.76, 1.0, 1.4, 1.74] {
            assert!(((g.eval(x) - ge.eval(x)).abs() - 1.0 / 3.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn approximant_value_near_origin() {
        // n = 2, m·b = 1, a = 0.5: g_ε(0.25) = 1 − 1/(2n+1) = 4/5
        let plan = AgnewPlan::new(0.5, 1.0, 2, None).unwrap();
        let ge = agnew_approximant(&plan).unwrap();
        assert!((ge.eval(0.25) - 0.8).abs() <= 1e-15);
    }

    #[test]
    fn error_function_is_exact_single_step_after_abs() {
        for (a, b, n) in [(0.75, 1.0, 1u64), (0.5, 0.5, 7), (1.3, 0.4, 23), (0.2, 1.7, 64)] {
            let plan = AgnewPlan::new(a, b, n, None).unwrap();
            let err = agnew_error_function(&plan).unwrap();
            let abs_err = err.abs();
            let height = 1.0 / plan.denominator();
            let reference =
                PiecewiseFunction::step(0.0, plan.error_support_end(), height).unwrap();
            assert_eq!(abs_err, reference, "a={a} b={b} n={n}");
        }
    }

    #[test]
    fn error_function_matches_public_combine_path() {
        // The dedicated construction agrees with g − g_ε computed through
        // the public combine over the approximant, up to float dust.
        let plan = AgnewPlan::new(0.6, 0.5, 5, None).unwrap();
        let ge = agnew_approximant(&plan).unwrap();
        let g = PiecewiseFunction::step(0.0, plan.a, 1.0).unwrap();
        let generic = linear_combine(&[(1.0, &g), (-1.0, &ge)]).unwrap();
        let exact = agnew_error_function(&plan).unwrap();
        for x in [0.0, 0.3, 0.59, 0.61, 1.0, 2.0, 3.0, 5.0, 5.59] {
            assert!((generic.eval(x) - exact.eval(x)).abs() <= 1e-14, "x = {x}");
        }
    }

    #[test]
    fn span_combination_reconstructs_the_approximant() {
        let plan = AgnewPlan::new(0.8, 0.3, 4, None).unwrap();
        let terms = agnew_span_combination(&plan).unwrap();
        assert_eq!(terms.len(), 2 * (plan.n * plan.m) as usize);
        let generator = PiecewiseFunction::step(0.0, plan.b, 1.0).unwrap();
        let translated: Vec<PiecewiseFunction> =
            terms.iter().map(|t| generator.translate(t.lambda)).collect();
        let combo: Vec<(f64, &PiecewiseFunction)> = terms
            .iter()
            .zip(translated.iter())
            .map(|(t, f)| (t.coefficient, f))
            .collect();
        let rebuilt = linear_combine(&combo).unwrap();
        let ge = agnew_approximant(&plan).unwrap();
        for i in 0..=200 {
            let x = -0.1 + i as f64 * (plan.error_support_end() + 0.2) / 200.0;
            assert!((rebuilt.eval(x) - ge.eval(x)).abs() <= 1e-12, "x = {x}");
        }
    }

    #[test]
    fn error_norm_matches_closed_form_and_threshold() {
        let p2 = OrliczFunction::power(2.0).unwrap();
        let plan = AgnewPlan::with_threshold(&p2, 0.5, 0.5, 0.1).unwrap();
        assert_eq!(plan.n, 201);
        assert_eq!(plan.m, 2);
        let norm = agnew_error_norm(&p2, &plan).unwrap();
        let closed =
            char_norm_closed_form(&p2, 1.0 / plan.denominator(), plan.error_support_end()).unwrap();
        assert!((norm - closed).abs() <= 1e-9 * closed);
        assert!(norm < 0.1);
    }

    #[test]
    fn l1_error_norm_is_the_integral() {
        // Φ = x: the error norm equals (n·mb + a)/(2n+1) → mb/2 ≠ 0.
        let p1 = OrliczFunction::power(1.0).unwrap();
        let plan = AgnewPlan::new(0.5, 0.5, 50, None).unwrap();
        let norm = agnew_error_norm(&p1, &plan).unwrap();
        let expect = plan.error_support_end() / plan.denominator();
        assert!((norm - expect).abs() <= 1e-9 * expect);
        assert!((expect - 0.5).abs() < 0.01);
    }

    #[test]
    fn quadrupling_n_halves_the_l2_error() {
        let p2 = OrliczFunction::power(2.0).unwrap();
        for n in [8u64, 32, 128] {
            let e1 = agnew_error_norm(&p2, &AgnewPlan::new(0.5, 0.5, n, None).unwrap()).unwrap();
            let e4 =
                agnew_error_norm(&p2, &AgnewPlan::new(0.5, 0.5, 4 * n, None).unwrap()).unwrap();
            let ratio = e4 / e1;
            assert!((ratio - 0.5).abs() <= 0.05 * 0.5, "n={n}: ratio {ratio}");
        }
    }
}
