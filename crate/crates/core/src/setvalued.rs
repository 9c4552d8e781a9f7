//! Interval-valued functions on positive domains and their algebra.
//!
//! A value `F(x)` is the interval `[f₁(x), f₂(x)]`. Endpoints are either
//! two expressions or, when no closed form is convenient (products of
//! sign-changing endpoints), a table on a uniform grid with linear
//! interpolation. Hypotheses such as `f₁ ≤ f₂` or nesting are validated on
//! sample grids and violations come back with a witness point.

use crate::error::{Error, Result};
use crate::exec::uniform_grid;
use crate::expr::Expr;
use crate::interval::{Box2, Inclusion, Interval, SetValue, DEFAULT_TOL};

/// Grid size used when a constructor validates its hypotheses.
pub const DEFAULT_VALIDATION_SAMPLES: usize = 257;

/// Node count of tabulated endpoint functions.
pub const TABLE_POINTS: usize = 1025;

/// Relative slack admitted when a point lands just outside the domain
/// through rounding; such points are clamped onto the boundary.
const DOMAIN_SLACK: f64 = 1e-12;

/// A set-valued map whose values support the convexity checks.
pub trait SetValuedFn: Sync {
    type Value: SetValue;
    fn domain(&self) -> Interval;
    fn value_at(&self, x: f64) -> Result<Self::Value>;
}

#[derive(Debug, Clone, PartialEq)]
enum Endpoints {
    Symbolic { lower: Expr, upper: Expr },
    Tabulated { lower: Vec<f64>, upper: Vec<f64> },
}

/// `x ↦ [f₁(x), f₂(x)]` on a domain inside `(0, ∞)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalFn {
    endpoints: Endpoints,
    domain: Interval,
    tol: f64,
}

fn require_positive_domain(domain: Interval) -> Result<()> {
    if domain.lo() > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            "domain",
            format!("{domain} must lie in (0, inf)"),
        ))
    }
}

fn require_same_domain(a: Interval, b: Interval) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DomainMismatch { left: a, right: b })
    }
}

fn require_tol(tol: f64) -> Result<()> {
    if tol >= 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(
            "tol",
            format!("{tol} must be finite and >= 0"),
        ))
    }
}

impl IntervalFn {
    /// Builds `F(x) = [f1(x), f2(x)]` after checking `f1 <= f2 + tol` on
    /// `samples` evenly spaced points of `domain`.
    pub fn from_endpoints(
        f1: Expr,
        f2: Expr,
        domain: Interval,
        samples: usize,
        tol: f64,
    ) -> Result<IntervalFn> {
        require_positive_domain(domain)?;
        require_tol(tol)?;
        if samples < 2 {
            return Err(Error::invalid(
                "samples",
                "at least 2 validation samples are required",
            ));
        }
        for x in uniform_grid(domain.lo(), domain.hi(), samples) {
            let (lower, upper) = (f1.eval(x)?, f2.eval(x)?);
            if lower > upper + tol {
                return Err(Error::OrderViolation { x, lower, upper });
            }
        }
        Ok(IntervalFn {
            endpoints: Endpoints::Symbolic {
                lower: f1,
                upper: f2,
            },
            domain,
            tol,
        })
    }

    /// Parses both endpoints and validates with the default grid and slack.
    pub fn parse(f1: &str, f2: &str, domain: Interval) -> Result<IntervalFn> {
        IntervalFn::from_endpoints(
            Expr::parse(f1)?,
            Expr::parse(f2)?,
            domain,
            DEFAULT_VALIDATION_SAMPLES,
            DEFAULT_TOL,
        )
    }

    /// The constant map `x ↦ value`.
    pub fn constant(value: Interval, domain: Interval) -> Result<IntervalFn> {
        require_positive_domain(domain)?;
        Ok(IntervalFn {
            endpoints: Endpoints::Symbolic {
                lower: Expr::Const(value.lo()),
                upper: Expr::Const(value.hi()),
            },
            domain,
            tol: DEFAULT_TOL,
        })
    }

    /// `F(x) = f(x)·H`. `f` must keep one sign on the validation grid so the
    /// endpoints can be written as `f·H.lo` and `f·H.hi` (swapped when `f`
    /// is non-positive).
    pub fn from_scaled_set(f: Expr, set: Interval, domain: Interval) -> Result<IntervalFn> {
        require_positive_domain(domain)?;
        let mut positive_at = None;
        let mut negative_at = None;
        for x in uniform_grid(domain.lo(), domain.hi(), DEFAULT_VALIDATION_SAMPLES) {
            let v = f.eval(x)?;
            if v > 0.0 && positive_at.is_none() {
                positive_at = Some(x);
            } else if v < 0.0 && negative_at.is_none() {
                negative_at = Some(x);
            }
        }
        let (lo, hi) = match (positive_at, negative_at) {
            (Some(p), Some(n)) => {
                return Err(Error::SignChange {
                    positive_at: p,
                    negative_at: n,
                })
            }
            (_, Some(_)) => (set.hi(), set.lo()),
            _ => (set.lo(), set.hi()),
        };
        Ok(IntervalFn {
            endpoints: Endpoints::Symbolic {
                lower: f.clone().mul(Expr::Const(lo)),
                upper: f.mul(Expr::Const(hi)),
            },
            domain,
            tol: DEFAULT_TOL,
        })
    }

    /// Tabulates `value` on [`TABLE_POINTS`] nodes; evaluation between nodes
    /// interpolates each endpoint linearly.
    pub fn tabulate<V>(domain: Interval, tol: f64, value: V) -> Result<IntervalFn>
    where
        V: Fn(f64) -> Result<Interval>,
    {
        require_positive_domain(domain)?;
        require_tol(tol)?;
        let mut lower = Vec::with_capacity(TABLE_POINTS);
        let mut upper = Vec::with_capacity(TABLE_POINTS);
        for x in uniform_grid(domain.lo(), domain.hi(), TABLE_POINTS) {
            let v = value(x)?;
            lower.push(v.lo());
            upper.push(v.hi());
        }
        Ok(IntervalFn {
            endpoints: Endpoints::Tabulated { lower, upper },
            domain,
            tol,
        })
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    /// Slack admitted between the endpoints during evaluation.
    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn is_tabulated(&self) -> bool {
        matches!(self.endpoints, Endpoints::Tabulated { .. })
    }

    /// Endpoint expressions, or `None` for tabulated functions.
    pub fn expressions(&self) -> Option<(&Expr, &Expr)> {
        match &self.endpoints {
            Endpoints::Symbolic { lower, upper } => Some((lower, upper)),
            Endpoints::Tabulated { .. } => None,
        }
    }

    /// Human-readable form, e.g. `[x^2, 12]`.
    pub fn describe(&self) -> String {
        match &self.endpoints {
            Endpoints::Symbolic { lower, upper } => format!("[{lower}, {upper}]"),
            Endpoints::Tabulated { lower, .. } => format!("<table of {} nodes>", lower.len()),
        }
    }

    /// Maps `x` into the domain, clamping rounding-level overshoot.
    fn locate(&self, x: f64) -> Result<f64> {
        let (lo, hi) = (self.domain.lo(), self.domain.hi());
        if self.domain.contains(x) {
            return Ok(x);
        }
        if x < lo && lo - x <= DOMAIN_SLACK * lo.abs().max(1.0) {
            return Ok(lo);
        }
        if x > hi && x - hi <= DOMAIN_SLACK * hi.abs().max(1.0) {
            return Ok(hi);
        }
        Err(Error::OutOfDomain {
            what: "x".into(),
            value: x,
            domain: self.domain,
        })
    }

    /// Raw endpoint values at an in-domain point, unordered.
    fn raw(&self, x: f64) -> Result<(f64, f64)> {
        match &self.endpoints {
            Endpoints::Symbolic { lower, upper } => Ok((lower.eval(x)?, upper.eval(x)?)),
            Endpoints::Tabulated { lower, upper } => {
                let n = lower.len();
                let width = self.domain.width();
                if width == 0.0 {
                    return Ok((lower[0], upper[0]));
                }
                let s = (x - self.domain.lo()) / width * (n - 1) as f64;
                let i = (s.floor() as usize).min(n - 2);
                let w = s - i as f64;
                let lerp = |v: &[f64]| v[i] + w * (v[i + 1] - v[i]);
                Ok((lerp(lower), lerp(upper)))
            }
        }
    }

    /// `F(x)`. Endpoints crossing by at most the function's tolerance are
    /// put back in order; larger crossings are an [`Error::OrderViolation`].
    pub fn eval(&self, x: f64) -> Result<Interval> {
        let x = self.locate(x)?;
        let (lower, upper) = self.raw(x)?;
        if lower > upper + self.tol {
            return Err(Error::OrderViolation { x, lower, upper });
        }
        Ok(Interval::spanning(lower, upper)?)
    }
}

impl SetValuedFn for IntervalFn {
    type Value = Interval;
    fn domain(&self) -> Interval {
        self.domain
    }
    fn value_at(&self, x: f64) -> Result<Interval> {
        self.eval(x)
    }
}

/// Union of nested functions. Returns the outer one after checking, on a
/// grid of `samples` points, that one contains the other everywhere.
///
/// When both directions hold (equal values) `first` is returned.
pub fn union_fn(
    first: &IntervalFn,
    second: &IntervalFn,
    samples: usize,
    tol: f64,
) -> Result<IntervalFn> {
    require_same_domain(first.domain, second.domain)?;
    require_tol(tol)?;
    let domain = first.domain;
    let mut first_outside = None;
    let mut second_outside = None;
    for x in uniform_grid(domain.lo(), domain.hi(), samples.max(2)) {
        let (a, b) = (first.eval(x)?, second.eval(x)?);
        if first_outside.is_none() && !a.subset_within(b, tol).holds {
            first_outside = Some(x);
        }
        if second_outside.is_none() && !b.subset_within(a, tol).holds {
            second_outside = Some(x);
        }
    }
    match (first_outside, second_outside) {
        (_, None) => Ok(first.clone()),
        (None, Some(_)) => Ok(second.clone()),
        (Some(f), Some(s)) => Err(Error::NestingViolation {
            first_outside_at: f,
            second_outside_at: s,
        }),
    }
}

/// `x ↦ λ·F(x) + G(x)`.
///
/// Symbolic operands give symbolic endpoints (swapping `F`'s endpoints when
/// `λ < 0`); a tabulated operand makes the result tabulated.
pub fn linear_combo(lambda: f64, f: &IntervalFn, g: &IntervalFn) -> Result<IntervalFn> {
    require_same_domain(f.domain, g.domain)?;
    if !lambda.is_finite() {
        return Err(Error::invalid("lambda", format!("{lambda} is not finite")));
    }
    if lambda == 0.0 {
        return Ok(g.clone());
    }
    let tol = f.tol.max(g.tol);
    match (f.expressions(), g.expressions()) {
        (Some((fl, fu)), Some((gl, gu))) => {
            let (fl, fu) = if lambda < 0.0 { (fu, fl) } else { (fl, fu) };
            let plus = |a: &Expr, b: &Expr| {
                let scaled = a.clone().scaled(lambda);
                if *b == Expr::Const(0.0) {
                    scaled
                } else {
                    scaled.add(b.clone())
                }
            };
            Ok(IntervalFn {
                endpoints: Endpoints::Symbolic {
                    lower: plus(fl, gl),
                    upper: plus(fu, gu),
                },
                domain: f.domain,
                tol,
            })
        }
        _ => IntervalFn::tabulate(f.domain, tol, |x| {
            Ok(f.eval(x)?.scale(lambda).add(g.eval(x)?))
        }),
    }
}

/// `x ↦ F₁(x) × F₂(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxFn {
    pub first: IntervalFn,
    pub second: IntervalFn,
}

impl BoxFn {
    pub fn eval(&self, x: f64) -> Result<Box2> {
        Ok(Box2::new(self.first.eval(x)?, self.second.eval(x)?))
    }
}

impl SetValuedFn for BoxFn {
    type Value = Box2;
    fn domain(&self) -> Interval {
        self.first.domain
    }
    fn value_at(&self, x: f64) -> Result<Box2> {
        self.eval(x)
    }
}

pub fn cartesian(first: &IntervalFn, second: &IntervalFn) -> Result<BoxFn> {
    require_same_domain(first.domain, second.domain)?;
    Ok(BoxFn {
        first: first.clone(),
        second: second.clone(),
    })
}

/// Sign pattern of an interval-valued function over the sample grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SignClass {
    NonNegative,
    NonPositive,
    /// `lower <= 0 <= upper` at every sample.
    Straddling,
    Mixed,
}

fn classify(f: &IntervalFn, samples: usize) -> Result<SignClass> {
    let (mut nonneg, mut nonpos, mut straddle) = (true, true, true);
    for x in uniform_grid(f.domain.lo(), f.domain.hi(), samples.max(2)) {
        let v = f.eval(x)?;
        nonneg &= v.lo() >= 0.0;
        nonpos &= v.hi() <= 0.0;
        straddle &= v.lo() <= 0.0 && v.hi() >= 0.0;
    }
    Ok(if nonneg {
        SignClass::NonNegative
    } else if nonpos {
        SignClass::NonPositive
    } else if straddle {
        SignClass::Straddling
    } else {
        SignClass::Mixed
    })
}

/// `x ↦ F(x)·G(x)`.
///
/// When each operand keeps one sign pattern on the sample grid the product
/// endpoints are fixed products of operand endpoints and stay symbolic.
/// Otherwise (or when both straddle zero, where the minimum switches
/// between two products) the result is tabulated.
pub fn product_fn(f: &IntervalFn, g: &IntervalFn, samples: usize) -> Result<IntervalFn> {
    use SignClass::*;
    require_same_domain(f.domain, g.domain)?;
    let tol = f.tol.max(g.tol);
    let tabulated = || IntervalFn::tabulate(f.domain, tol, |x| Ok(f.eval(x)?.mul(g.eval(x)?)));

    let (Some((a, b)), Some((c, d))) = (f.expressions(), g.expressions()) else {
        return tabulated();
    };
    let pick = |p: &Expr, q: &Expr| p.clone().mul(q.clone());
    let (lower, upper) = match (classify(f, samples)?, classify(g, samples)?) {
        (NonNegative, NonNegative) => (pick(a, c), pick(b, d)),
        (NonNegative, NonPositive) => (pick(b, c), pick(a, d)),
        (NonNegative, Straddling) => (pick(b, c), pick(b, d)),
        (NonPositive, NonNegative) => (pick(a, d), pick(b, c)),
        (NonPositive, NonPositive) => (pick(b, d), pick(a, c)),
        (NonPositive, Straddling) => (pick(a, d), pick(a, c)),
        (Straddling, NonNegative) => (pick(a, d), pick(b, d)),
        (Straddling, NonPositive) => (pick(b, c), pick(a, c)),
        _ => return tabulated(),
    };
    Ok(IntervalFn {
        endpoints: Endpoints::Symbolic { lower, upper },
        domain: f.domain,
        tol,
    })
}

/// The product inclusion
/// `F(x₁)G(x₂) + F(x₂)G(x₁) ⊆ F(x₁)G(x₁) + F(x₂)G(x₂)`.
///
/// For positive values this holds exactly when the lower endpoints of `F`
/// and `G` are oppositely ordered between `x₁` and `x₂` and the upper
/// endpoints are similarly ordered; it is not true for arbitrary interval
/// functions, so callers test it rather than assume it.
pub fn product_lemma(
    f: &IntervalFn,
    g: &IntervalFn,
    x1: f64,
    x2: f64,
    tol: f64,
) -> Result<Inclusion> {
    let (f1, f2, g1, g2) = (f.eval(x1)?, f.eval(x2)?, g.eval(x1)?, g.eval(x2)?);
    let cross = f1.mul(g2).add(f2.mul(g1));
    let diagonal = f1.mul(g1).add(f2.mul(g2));
    Ok(cross.subset_within(diagonal, tol))
}
