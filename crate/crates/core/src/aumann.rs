//! Aumann integrals against the kernel `1/x²` and Hermite–Hadamard checks.
//!
//! For `F(x) = [f₁(x), f₂(x)]` with integrable endpoints, every integrable
//! selection `f(x) ∈ F(x)` integrates into `[∫f₁, ∫f₂]` and both ends are
//! attained by the endpoint selections, so the Aumann integral reduces to
//! two scalar quadratures.

use std::fmt;

use crate::error::{Error, Result};
use crate::exec::{join, Execution};
use crate::expr::Expr;
use crate::interval::Interval;
use crate::setvalued::IntervalFn;

/// Default absolute tolerance for quadratures.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Evaluation budget per quadrature.
pub const MAX_EVALUATIONS: usize = 1 << 20;

/// Panels are split at least this many times before the error test is
/// trusted (at least 2^MIN_DEPTH panels).
const MIN_DEPTH: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

struct Simpson<'f, F> {
    f: &'f F,
    evaluations: usize,
    max_evaluations: usize,
}

impl<F> Simpson<'_, F>
where
    F: Fn(f64) -> Result<f64>,
{
    fn eval(&mut self, x: f64) -> Result<f64> {
        if self.evaluations >= self.max_evaluations {
            return Err(Error::NonConvergence {
                evaluations: self.evaluations,
            });
        }
        self.evaluations += 1;
        (self.f)(x)
    }

    /// Returns (value, error estimate) on `[a, b]` given the endpoint and
    /// midpoint values and the one-panel Simpson estimate `whole`.
    #[allow(clippy::too_many_arguments)]
    fn refine(
        &mut self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> Result<(f64, f64)> {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        if !(a < lm && lm < m && m < rm && rm < b) {
            // panel narrower than the float spacing
            return Err(Error::NonConvergence {
                evaluations: self.evaluations,
            });
        }
        let flm = self.eval(lm)?;
        let frm = self.eval(rm)?;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth >= MIN_DEPTH && delta.abs() <= 15.0 * eps {
            // Richardson extrapolation
            return Ok((left + right + delta / 15.0, delta.abs() / 15.0));
        }
        let (lv, le) = self.refine(a, m, fa, flm, fm, left, 0.5 * eps, depth + 1)?;
        let (rv, re) = self.refine(m, b, fm, frm, fb, right, 0.5 * eps, depth + 1)?;
        Ok((lv + rv, le + re))
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` with per-panel
/// Richardson error estimates summing to at most `tol`.
pub fn adaptive_simpson<F>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_evaluations: usize,
) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::invalid(
            "interval",
            format!("need finite a < b, got [{a}, {b}]"),
        ));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::invalid(
            "tol",
            format!("{tol} must be finite and > 0"),
        ));
    }
    let mut s = Simpson {
        f: &f,
        evaluations: 0,
        max_evaluations,
    };
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (s.eval(a)?, s.eval(m)?, s.eval(b)?);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let (value, err) = s.refine(a, b, fa, fm, fb, whole, tol, 0)?;
    Ok(QuadResult {
        value,
        abs_error_estimate: err,
        evaluations: s.evaluations,
    })
}

fn require_ordered(a: f64, b: f64) -> Result<()> {
    if a > 0.0 && a < b && b.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(
            "interval",
            format!("need 0 < a < b, got a = {a}, b = {b}"),
        ))
    }
}

/// `∫_a^b f(x)/x² dx`, without the `ab/(b − a)` normalisation.
pub fn integrate_weighted(f: &Expr, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    require_ordered(a, b)?;
    adaptive_simpson(|x| Ok(f.eval(x)? / (x * x)), a, b, tol, MAX_EVALUATIONS)
}

/// Weighted Aumann mean with its quadrature error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AumannMean {
    /// `(ab/(b − a)) · [∫f₁/x², ∫f₂/x²]`.
    pub value: Interval,
    /// Bound on the error of each endpoint, already normalised.
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

fn require_in_domain(what: &str, x: f64, domain: Interval) -> Result<()> {
    if domain.contains(x) {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            what: what.into(),
            value: x,
            domain,
        })
    }
}

/// `(ab/(b − a)) ∫_a^b F(x)/x² dx` as an interval, accurate to `tol` at
/// each endpoint (up to the quadrature's own estimate).
pub fn aumann_mean(f: &IntervalFn, a: f64, b: f64, tol: f64) -> Result<Interval> {
    aumann_mean_detailed(f, a, b, tol, Execution::default()).map(|r| r.value)
}

pub fn aumann_mean_detailed(
    f: &IntervalFn,
    a: f64,
    b: f64,
    tol: f64,
    exec: Execution,
) -> Result<AumannMean> {
    require_ordered(a, b)?;
    require_in_domain("a", a, f.domain())?;
    require_in_domain("b", b, f.domain())?;
    let scale = a * b / (b - a);
    let quad_tol = tol / scale;
    let endpoint = |upper: bool| {
        adaptive_simpson(
            |x| {
                let v = f.eval(x)?;
                Ok(if upper { v.hi() } else { v.lo() } / (x * x))
            },
            a,
            b,
            quad_tol,
            MAX_EVALUATIONS,
        )
    };
    let (lo, hi) = join(exec, || endpoint(false), || endpoint(true));
    let (lo, hi) = (lo?, hi?);
    Ok(AumannMean {
        value: Interval::spanning(scale * lo.value, scale * hi.value)?,
        abs_error_estimate: scale * lo.abs_error_estimate.max(hi.abs_error_estimate),
        evaluations: lo.evaluations + hi.evaluations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HhVerdict {
    HoldsWithinTol,
    Violated,
}

impl HhVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            HhVerdict::HoldsWithinTol => "HOLDS_WITHIN_TOL",
            HhVerdict::Violated => "VIOLATED",
        }
    }
}

impl fmt::Display for HhVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of the set-valued Hermite–Hadamard check.
///
/// Two relations are reported. The half-sum inclusions `S₁ ⊆ H` and
/// `S₂ ⊆ H` are the set statements; `min_inf_member` reads the scalar
/// `min(inf S₁, inf S₂)` as a point that must lie in `H`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HhReport {
    /// `H = (ab/(b − a)) ∫_a^b F(x)/x² dx`.
    pub integral_mean: Interval,
    pub integral_error: f64,
    /// `S₁ = (F(a) + m·F(b/m)) / 2`.
    pub half_sum_ab: Interval,
    /// `S₂ = (m·F(a/m) + F(b)) / 2`.
    pub half_sum_ba: Interval,
    pub margin_ab: f64,
    pub margin_ba: f64,
    pub min_inf_point: f64,
    pub min_inf_member: bool,
    pub verdict: HhVerdict,
}

/// Checks `S₁ ⊆ H`, `S₂ ⊆ H` and `min(inf S₁, inf S₂) ∈ H` within `tol`.
///
/// `F` must be defined on `[a, b]` and at `a/m` and `b/m`; for `m < 1` the
/// latter exceed `b`, so the domain has to extend to `b/m`.
pub fn check_hh_setvalued(f: &IntervalFn, a: f64, b: f64, m: f64, tol: f64) -> Result<HhReport> {
    check_hh_setvalued_with(f, a, b, m, tol, DEFAULT_QUAD_TOL, Execution::default())
}

pub fn check_hh_setvalued_with(
    f: &IntervalFn,
    a: f64,
    b: f64,
    m: f64,
    tol: f64,
    quad_tol: f64,
    exec: Execution,
) -> Result<HhReport> {
    require_ordered(a, b)?;
    if !(m > 0.0 && m <= 1.0) {
        return Err(Error::invalid("m", format!("{m} is outside (0, 1]")));
    }
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(Error::invalid(
            "tol",
            format!("{tol} must be finite and >= 0"),
        ));
    }
    let domain = f.domain();
    require_in_domain("a", a, domain)?;
    require_in_domain("b", b, domain)?;
    let (a_m, b_m) = (a / m, b / m);
    require_in_domain("a/m", a_m, domain)?;
    require_in_domain("b/m", b_m, domain)?;

    let mean = aumann_mean_detailed(f, a, b, quad_tol, exec)?;
    let h = mean.value;
    let s1 = f.eval(a)?.add(f.eval(b_m)?.scale(m)).scale(0.5);
    let s2 = f.eval(a_m)?.scale(m).add(f.eval(b)?).scale(0.5);
    let inc1 = s1.subset_within(h, tol);
    let inc2 = s2.subset_within(h, tol);
    let min_inf_point = s1.lo().min(s2.lo());
    let min_inf_member = h.membership_margin(min_inf_point) >= -tol;
    let holds = inc1.holds && inc2.holds && min_inf_member;
    Ok(HhReport {
        integral_mean: h,
        integral_error: mean.abs_error_estimate,
        half_sum_ab: s1,
        half_sum_ba: s2,
        margin_ab: inc1.margin,
        margin_ba: inc2.margin,
        min_inf_point,
        min_inf_member,
        verdict: if holds {
            HhVerdict::HoldsWithinTol
        } else {
            HhVerdict::Violated
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarHh {
    /// `(ab/(b − a)) ∫_a^b f(x)/x² dx`.
    pub lhs: f64,
    /// `min{(f(a) + f(b/m))/2, (f(b) + f(a/m))/2}`.
    pub rhs: f64,
    pub holds: bool,
}

/// Scalar Hermite–Hadamard inequality for harmonically m-convex `f`.
pub fn check_hh_scalar(f: &Expr, a: f64, b: f64, m: f64, tol: f64) -> Result<ScalarHh> {
    require_ordered(a, b)?;
    if !(m > 0.0 && m <= 1.0) {
        return Err(Error::invalid("m", format!("{m} is outside (0, 1]")));
    }
    let scale = a * b / (b - a);
    let integral = integrate_weighted(f, a, b, DEFAULT_QUAD_TOL / scale)?;
    let lhs = scale * integral.value;
    let rhs = (0.5 * (f.eval(a)? + f.eval(b / m)?)).min(0.5 * (f.eval(b)? + f.eval(a / m)?));
    Ok(ScalarHh {
        lhs,
        rhs,
        holds: lhs <= rhs + tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(text: &str) -> Expr {
        Expr::parse(text).unwrap()
    }

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn weighted_integral_examples() {
        let r = integrate_weighted(&e("x^2"), 1.0, 2.0, 1e-10).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let r = integrate_weighted(&e("1"), 1.0, 2.0, 1e-10).unwrap();
        assert!((r.value - 0.5).abs() < 1e-10);
        // antiderivative x − 1/x: (2 − 0.5) − (1 − 1) = 1.5
        let r = integrate_weighted(&e("x^2 + 1"), 1.0, 2.0, 1e-10).unwrap();
        assert!((r.value - 1.5).abs() < 1e-10);
        assert!(r.abs_error_estimate <= 1e-10);
        assert!(r.evaluations >= 1 << MIN_DEPTH);
    }

    #[test]
    fn weighted_integral_errors() {
        assert!(matches!(
            integrate_weighted(&e("log(x - 1.5)"), 1.0, 2.0, 1e-10),
            Err(Error::Domain(_))
        ));
        assert!(integrate_weighted(&e("x"), 2.0, 1.0, 1e-10).is_err());
        assert!(integrate_weighted(&e("x"), 0.0, 1.0, 1e-10).is_err());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let r = adaptive_simpson(|x| Ok((1.0 / x).sin()), 1e-4, 1.0, 1e-14, 200);
        assert!(matches!(r, Err(Error::NonConvergence { evaluations: 200 })));
    }

    /// Simpson with Richardson extrapolation integrates cubics exactly.
    #[test]
    fn cubic_integrands_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let c: [f64; 4] = std::array::from_fn(|_| rng.random_range(-3.0..3.0));
            let a = rng.random_range(0.1..2.0);
            let b = a + rng.random_range(0.1..3.0);
            // f(x) = x²·p(x) so that f/x² = p is a cubic
            let f = e(&format!(
                "x^2 * ({} + {}*x + {}*x^2 + {}*x^3)",
                c[0], c[1], c[2], c[3]
            ));
            let anti = |x: f64| {
                c[0] * x + c[1] * x * x / 2.0 + c[2] * x.powi(3) / 3.0 + c[3] * x.powi(4) / 4.0
            };
            let r = integrate_weighted(&f, a, b, 1e-10).unwrap();
            assert!(
                (r.value - (anti(b) - anti(a))).abs() <= 1e-12,
                "{}",
                r.value - (anti(b) - anti(a))
            );
        }
    }

    #[test]
    fn aumann_mean_examples() {
        let c = IntervalFn::constant(iv(-1.5, 2.0), iv(0.5, 5.0)).unwrap();
        let h = aumann_mean(&c, 1.0, 3.0, 1e-10).unwrap();
        assert!((h.lo() + 1.5).abs() < 1e-10 && (h.hi() - 2.0).abs() < 1e-10);

        let f = IntervalFn::parse("x^2", "x^2 + 1", iv(1.0, 2.0)).unwrap();
        let h = aumann_mean(&f, 1.0, 2.0, 1e-10).unwrap();
        assert!((h.lo() - 2.0).abs() < 1e-9 && (h.hi() - 3.0).abs() < 1e-9);

        let f = IntervalFn::parse("x", "x", iv(1.0, 2.0)).unwrap();
        let h = aumann_mean(&f, 1.0, 2.0, 1e-10).unwrap();
        let want = 2.0 * std::f64::consts::LN_2;
        assert!((h.lo() - want).abs() < 1e-9 && (h.hi() - want).abs() < 1e-9);
        assert!((want - 1.3863).abs() < 1e-4);

        assert!(matches!(
            aumann_mean(&f, 1.0, 2.5, 1e-10),
            Err(Error::OutOfDomain { ref what, .. }) if what == "b"
        ));
    }

    #[test]
    fn aumann_mean_is_monotone() {
        let dom = iv(1.0, 4.0);
        let inner = IntervalFn::parse("x^2", "x^2 + exp(-x)", dom).unwrap();
        let outer = IntervalFn::parse("x^2 - 1/x", "x^2 + 1", dom).unwrap();
        let (hi, ho) = (
            aumann_mean(&inner, 1.0, 4.0, 1e-10).unwrap(),
            aumann_mean(&outer, 1.0, 4.0, 1e-10).unwrap(),
        );
        assert!(hi.subset_within(ho, 1e-9).holds);
    }

    #[test]
    fn tabulated_functions_integrate() {
        let dom = iv(1.0, 2.0);
        let f = IntervalFn::parse("x^2", "x^2 + 1", dom).unwrap();
        let t = IntervalFn::tabulate(dom, 1e-9, |x| f.eval(x)).unwrap();
        let h = aumann_mean(&t, 1.0, 2.0, 1e-10).unwrap();
        // piecewise-linear interpolation error of x² with step 1/1024
        assert!((h.lo() - 2.0).abs() < 1e-6 && (h.hi() - 3.0).abs() < 1e-6);
    }

    #[test]
    fn hh_setvalued_examples() {
        // x² ≤ 12 needs x ≤ √12, so the domain stops at 3
        let f = IntervalFn::parse("x^2", "12", iv(1.0, 3.0)).unwrap();
        let r = check_hh_setvalued(&f, 1.0, 2.0, 1.0, 1e-9).unwrap();
        assert!((r.integral_mean.lo() - 2.0).abs() < 1e-9);
        assert!((r.integral_mean.hi() - 12.0).abs() < 1e-9);
        assert_eq!(r.half_sum_ab, iv(2.5, 12.0));
        assert_eq!(r.half_sum_ba, iv(2.5, 12.0));
        assert_eq!(r.min_inf_point, 2.5);
        assert!(r.min_inf_member);
        assert_eq!(r.verdict, HhVerdict::HoldsWithinTol);

        let c = IntervalFn::constant(Interval::point(3.25), iv(0.5, 9.0)).unwrap();
        let r = check_hh_setvalued(&c, 0.7, 4.0, 1.0, 1e-9).unwrap();
        assert_eq!(r.verdict, HhVerdict::HoldsWithinTol);
        assert!(r.margin_ab.abs() < 1e-10 && r.margin_ba.abs() < 1e-10);
    }

    /// `[x², 40]` on `[1, 4]` with m = 1/2: by hand, H = [2, 40],
    /// S₁ = ([1, 40] + ½[16, 40])/2 = [4.5, 30] and
    /// S₂ = (½[4, 40] + [4, 40])/2 = [3, 30].
    #[test]
    fn hh_setvalued_with_m_below_one() {
        let f = IntervalFn::parse("x^2", "40", iv(1.0, 4.0)).unwrap();
        let p = crate::HarmonicParams::default().with_m(0.5);
        assert!(crate::check_svf(&f, &p).unwrap().is_certified());
        let r = check_hh_setvalued(&f, 1.0, 2.0, 0.5, 1e-9).unwrap();
        assert_eq!(r.half_sum_ab, iv(4.5, 30.0));
        assert_eq!(r.half_sum_ba, iv(3.0, 30.0));
        assert!((r.margin_ab - 2.5).abs() < 1e-9);
        assert!((r.margin_ba - 1.0).abs() < 1e-9);
        assert_eq!(r.verdict, HhVerdict::HoldsWithinTol);
    }

    #[test]
    fn hh_setvalued_names_missing_points() {
        let f = IntervalFn::parse("x^2", "40", iv(1.0, 3.0)).unwrap();
        match check_hh_setvalued(&f, 1.0, 2.0, 0.5, 1e-9) {
            Err(Error::OutOfDomain { what, value, .. }) => {
                assert_eq!(what, "b/m");
                assert_eq!(value, 4.0);
            }
            other => panic!("{other:?}"),
        }
        assert!(check_hh_setvalued(&f, 1.0, 2.0, 0.0, 1e-9).is_err());
    }

    #[test]
    fn hh_setvalued_detects_violation() {
        // 3x² is not an admissible upper endpoint; S exceeds H on the right
        let f = IntervalFn::parse("2*x^2", "3*x^2", iv(1.0, 2.0)).unwrap();
        let r = check_hh_setvalued(&f, 1.0, 2.0, 1.0, 1e-9).unwrap();
        assert_eq!(r.verdict, HhVerdict::Violated);
        assert!(r.margin_ab < 0.0);
    }

    #[test]
    fn hh_scalar_examples() {
        let r = check_hh_scalar(&e("x^2"), 1.0, 2.0, 1.0, 1e-9).unwrap();
        assert!((r.lhs - 2.0).abs() < 1e-9);
        assert_eq!(r.rhs, 2.5);
        assert!(r.holds);

        let r = check_hh_scalar(&e("1"), 0.3, 7.0, 1.0, 1e-9).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-9);
        assert_eq!(r.rhs, 1.0);
        assert!(r.holds);

        let r = check_hh_scalar(&e("0 - x^2"), 1.0, 2.0, 1.0, 1e-9).unwrap();
        assert!((r.lhs + 2.0).abs() < 1e-9);
        assert_eq!(r.rhs, -2.5);
        assert!(!r.holds);
    }

    #[test]
    fn execution_modes_agree() {
        let f = IntervalFn::parse("x^2 - log(x)", "x^3", iv(1.0, 4.0)).unwrap();
        let a = aumann_mean_detailed(&f, 1.0, 4.0, 1e-10, Execution::Sequential).unwrap();
        let b = aumann_mean_detailed(&f, 1.0, 4.0, 1e-10, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
