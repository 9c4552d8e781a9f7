//! Harmonic m-convex combinations and sampling-based certifiers.
//!
//! Every check evaluates a signed margin at sample triples `(x, y, t)`:
//! a deterministic tensor grid plus `trials` seeded uniform draws. The
//! report keeps the most negative margin; ties go to the lexicographically
//! smallest triple, so the outcome does not depend on evaluation order.
//! A passing check is reported as certified *on samples* only.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::{fold_range, uniform_grid, Execution};
use crate::expr::Expr;
use crate::interval::{Interval, SetValue, DEFAULT_TOL};
use crate::setvalued::{IntervalFn, SetValuedFn};

/// Relative slack for combination sets that overshoot the domain by
/// rounding.
const SET_SLACK: f64 = 1e-12;

/// `m·x·y / (t·m·x + (1 − t)·y)`, the harmonic m-convex combination of
/// `x` and `y` with weight `t` on `y`.
///
/// The value is a weighted harmonic mean of `m·x` and `y`, so it is
/// clamped into `[min(mx, y), max(mx, y)]` against rounding; `t = 1`
/// yields `y` and `t = 0` yields `m·x` exactly.
#[inline]
pub fn harmonic_combination(x: f64, y: f64, t: f64, m: f64) -> f64 {
    let mx = m * x;
    if t == 1.0 {
        return y;
    }
    if t == 0.0 {
        return mx;
    }
    let h = mx * y / (t * mx + (1.0 - t) * y);
    h.clamp(mx.min(y), mx.max(y))
}

/// Sampling and tolerance settings shared by the certifiers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicParams {
    /// In `(0, 1]`.
    pub m: f64,
    /// In `[0, 1]`; only the scalar check uses it.
    pub alpha: f64,
    pub tol: f64,
    /// Grid points per spatial axis.
    pub samples: usize,
    /// Grid points for `t`, always including 0 and 1.
    pub grid_t: usize,
    /// Extra seeded uniform triples.
    pub trials: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for HarmonicParams {
    fn default() -> Self {
        HarmonicParams {
            m: 1.0,
            alpha: 1.0,
            tol: DEFAULT_TOL,
            samples: 33,
            grid_t: 11,
            trials: 1000,
            seed: 0,
            execution: Execution::default(),
        }
    }
}

fn check_m(m: f64) -> Result<()> {
    if m > 0.0 && m <= 1.0 {
        Ok(())
    } else {
        Err(Error::invalid("m", format!("{m} is outside (0, 1]")))
    }
}

impl HarmonicParams {
    pub fn with_m(self, m: f64) -> Self {
        HarmonicParams { m, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        check_m(self.m)?;
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::invalid(
                "alpha",
                format!("{} is outside [0, 1]", self.alpha),
            ));
        }
        if !(self.tol >= 0.0 && self.tol.is_finite()) {
            return Err(Error::invalid(
                "tol",
                format!("{} must be finite and >= 0", self.tol),
            ));
        }
        if self.grid_t < 3 {
            return Err(Error::invalid("grid_t", "at least 3 points are required"));
        }
        if self.samples < 2 {
            return Err(Error::invalid("samples", "at least 2 points are required"));
        }
        Ok(())
    }

    fn t_grid(&self) -> Vec<f64> {
        uniform_grid(0.0, 1.0, self.grid_t).collect()
    }
}

/// A sample point: `x`, `y` and the weight `t` on `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triple {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl Triple {
    pub fn new(x: f64, y: f64, t: f64) -> Self {
        Triple { x, y, t }
    }

    fn lexicographic(&self, other: &Triple) -> Ordering {
        self.x
            .total_cmp(&other.x)
            .then(self.y.total_cmp(&other.y))
            .then(self.t.total_cmp(&other.t))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x={}, y={}, t={})", self.x, self.y, self.t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    CertifiedOnSamples,
    Falsified,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::CertifiedOnSamples => "CERTIFIED_ON_SAMPLES",
            Verdict::Falsified => "FALSIFIED",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexityReport {
    pub verdict: Verdict,
    /// Smallest margin seen; `+∞` when nothing was checked.
    pub worst_margin: f64,
    /// Present exactly when the verdict is [`Verdict::Falsified`].
    pub counterexample: Option<Triple>,
    pub samples_checked: usize,
    /// Samples whose combination point fell outside the domain.
    pub samples_skipped: usize,
    /// More than half of the samples were skipped.
    pub coverage_warning: bool,
}

impl ConvexityReport {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::CertifiedOnSamples
    }
}

/// Lazily enumerated sample triples: the tensor grid `xs × ys × ts`
/// followed by explicit extra triples.
struct Samples {
    xs: Vec<f64>,
    ys: Vec<f64>,
    ts: Vec<f64>,
    extra: Vec<Triple>,
}

impl Samples {
    fn grid_len(&self) -> usize {
        self.xs.len() * self.ys.len() * self.ts.len()
    }

    fn len(&self) -> usize {
        self.grid_len() + self.extra.len()
    }

    fn get(&self, i: usize) -> Triple {
        let g = self.grid_len();
        if i >= g {
            return self.extra[i - g];
        }
        let (ny, nt) = (self.ys.len(), self.ts.len());
        Triple::new(
            self.xs[i / (ny * nt)],
            self.ys[(i / nt) % ny],
            self.ts[i % nt],
        )
    }

    /// Grid over `xdom × ydom × t-grid` plus `params.trials` seeded draws.
    fn tensor(xdom: Interval, ydom: Interval, params: &HarmonicParams) -> Samples {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let draw = |rng: &mut ChaCha8Rng, d: Interval| {
            if d.is_degenerate() {
                d.lo()
            } else {
                rng.random_range(d.lo()..=d.hi())
            }
        };
        let extra = (0..params.trials)
            .map(|_| {
                let x = draw(&mut rng, xdom);
                let y = draw(&mut rng, ydom);
                let t = rng.random_range(0.0..=1.0);
                Triple::new(x, y, t)
            })
            .collect();
        Samples {
            xs: uniform_grid(xdom.lo(), xdom.hi(), params.samples).collect(),
            ys: uniform_grid(ydom.lo(), ydom.hi(), params.samples).collect(),
            ts: params.t_grid(),
            extra,
        }
    }
}

#[derive(Debug, Clone, Default)]
struct Scan {
    worst: Option<(f64, Triple)>,
    checked: usize,
    skipped: usize,
    /// Error at the smallest sample index, for a deterministic outcome.
    error: Option<(usize, Error)>,
}

fn worse(a: &(f64, Triple), b: &(f64, Triple)) -> bool {
    a.0.total_cmp(&b.0).then_with(|| a.1.lexicographic(&b.1)) == Ordering::Less
}

impl Scan {
    fn offer(&mut self, margin: f64, at: Triple) {
        let cand = (margin, at);
        if self.worst.as_ref().is_none_or(|w| worse(&cand, w)) {
            self.worst = Some(cand);
        }
    }

    fn merge(mut self, other: Scan) -> Scan {
        if let Some(w) = other.worst {
            self.offer(w.0, w.1);
        }
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.error = match (self.error, other.error) {
            (Some(a), Some(b)) => Some(if b.0 < a.0 { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }

    fn into_report(self, tol: f64) -> Result<ConvexityReport> {
        if let Some((_, err)) = self.error {
            return Err(err);
        }
        let (worst_margin, worst_at) = match self.worst {
            Some((m, at)) => (m, Some(at)),
            None => (f64::INFINITY, None),
        };
        let falsified = worst_margin < -tol;
        let total = self.checked + self.skipped;
        Ok(ConvexityReport {
            verdict: if falsified {
                Verdict::Falsified
            } else {
                Verdict::CertifiedOnSamples
            },
            worst_margin,
            counterexample: if falsified { worst_at } else { None },
            samples_checked: self.checked,
            samples_skipped: self.skipped,
            coverage_warning: 2 * self.skipped > total,
        })
    }
}

/// Evaluates `margin` at every sample and reduces to a report. `margin`
/// returns `Ok(None)` for a skipped sample.
fn scan<M>(samples: &Samples, params: &HarmonicParams, margin: M) -> Result<ConvexityReport>
where
    M: Fn(Triple) -> Result<Option<f64>> + Sync + Send,
{
    fold_range(
        samples.len(),
        params.execution,
        Scan::default,
        |mut acc, i| {
            let at = samples.get(i);
            match margin(at) {
                Ok(Some(m)) => {
                    acc.checked += 1;
                    acc.offer(m, at);
                }
                Ok(None) => acc.skipped += 1,
                Err(e) => {
                    if acc.error.as_ref().is_none_or(|(j, _)| i < *j) {
                        acc.error = Some((i, e));
                    }
                }
            }
            acc
        },
        Scan::merge,
    )
    .into_report(params.tol)
}

/// Checks `t·b + m(1 − t)·a ∈ set` over sampled `a, b ∈ set`, `t ∈ [0, 1]`.
/// The triple reports `a` as `x` and `b` as `y`.
pub fn is_m_convex_set(set: Interval, m: f64, params: &HarmonicParams) -> Result<ConvexityReport> {
    let params = params.with_m(m);
    params.validate()?;
    let samples = Samples::tensor(set, set, &params);
    scan(&samples, &params, |p| {
        let point = p.t * p.y + m * (1.0 - p.t) * p.x;
        Ok(Some(set.membership_margin(point)))
    })
}

/// Checks that `set ⊂ (0, ∞)` is closed under the harmonic m-convex
/// combination.
pub fn is_harmonic_m_convex_set(
    set: Interval,
    m: f64,
    params: &HarmonicParams,
) -> Result<ConvexityReport> {
    let params = params.with_m(m);
    params.validate()?;
    if set.lo() <= 0.0 {
        return Err(Error::invalid("set", format!("{set} must lie in (0, inf)")));
    }
    let samples = Samples::tensor(set, set, &params);
    scan(&samples, &params, |p| {
        Ok(Some(
            set.membership_margin(harmonic_combination(p.x, p.y, p.t, m)),
        ))
    })
}

/// Checks `t·s ∈ set` for `s ∈ {lo, hi}` and `t ∈ (0, 1]`. Testing the two
/// endpoints suffices for an interval. The triple reports `s` as `x` and
/// the scaled point `t·s` as `y`.
pub fn is_starshaped(set: Interval, params: &HarmonicParams) -> Result<ConvexityReport> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let ts: Vec<f64> = params
        .t_grid()
        .into_iter()
        .filter(|&t| t > 0.0)
        .chain((0..params.trials).map(|_| 1.0 - rng.random_range(0.0..1.0)))
        .collect();
    let ends: &[f64] = if set.is_degenerate() {
        &[set.lo()]
    } else {
        &[set.lo(), set.hi()]
    };
    let extra = ends
        .iter()
        .flat_map(|&s| ts.iter().map(move |&t| Triple::new(s, t * s, t)))
        .collect();
    let samples = Samples {
        xs: vec![],
        ys: vec![],
        ts: vec![],
        extra,
    };
    scan(&samples, params, |p| Ok(Some(set.membership_margin(p.y))))
}

fn require_positive(domain: Interval) -> Result<()> {
    if domain.lo() > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            "domain",
            format!("{domain} must lie in (0, inf)"),
        ))
    }
}

/// Harmonically (α, m)-convex scalar check:
/// `f(h) ≤ t^α f(y) + m (1 − t)^α f(x)` with `h` the harmonic combination.
/// The margin is right-hand side minus left-hand side. Samples whose `h`
/// leaves `domain` are skipped.
pub fn check_scalar(
    f: &Expr,
    domain: Interval,
    params: &HarmonicParams,
) -> Result<ConvexityReport> {
    params.validate()?;
    require_positive(domain)?;
    let HarmonicParams { m, alpha, .. } = *params;
    let samples = Samples::tensor(domain, domain, params);
    scan(&samples, params, |p| {
        let h = harmonic_combination(p.x, p.y, p.t, m);
        if !domain.contains(h) {
            return Ok(None);
        }
        let lhs = f.eval(h)?;
        let rhs = p.t.powf(alpha) * f.eval(p.y)? + m * (1.0 - p.t).powf(alpha) * f.eval(p.x)?;
        Ok(Some(rhs - lhs))
    })
}

/// Inclusion margin of `t·F(y) + m(1 − t)·F(x)` in `F(h)`, or `None` when
/// `h` leaves the domain.
pub fn svf_margin<F: SetValuedFn>(f: &F, p: Triple, m: f64) -> Result<Option<f64>> {
    let h = harmonic_combination(p.x, p.y, p.t, m);
    if !f.domain().contains(h) {
        return Ok(None);
    }
    let combined = f
        .value_at(p.y)?
        .scaled(p.t)
        .minkowski_add(f.value_at(p.x)?.scaled(m * (1.0 - p.t)));
    Ok(Some(combined.margin_in(f.value_at(h)?)))
}

/// Harmonically m-convex set-valued check:
/// `t·F(y) + m(1 − t)·F(x) ⊆ F(h)` on sampled triples. `params.alpha` is
/// not used.
pub fn check_svf<F: SetValuedFn>(f: &F, params: &HarmonicParams) -> Result<ConvexityReport> {
    params.validate()?;
    let domain = f.domain();
    require_positive(domain)?;
    let samples = Samples::tensor(domain, domain, params);
    scan(&samples, params, |p| svf_margin(f, p, params.m))
}

fn require_within(what: &str, set: Interval, domain: Interval) -> Result<Interval> {
    let slack = |v: f64| SET_SLACK * v.abs().max(1.0);
    if set.lo() < domain.lo() - slack(domain.lo()) || set.hi() > domain.hi() + slack(domain.hi()) {
        let value = if set.lo() < domain.lo() {
            set.lo()
        } else {
            set.hi()
        };
        return Err(Error::OutOfDomain {
            what: what.into(),
            value,
            domain,
        });
    }
    let lo = set.lo().max(domain.lo());
    Ok(Interval::from_ordered(
        lo,
        set.hi().min(domain.hi()).max(lo),
    ))
}

/// `F(A) = ⋃_{z ∈ A} F(z)`, approximated by the hull of `F` over
/// `samples` evenly spaced points of `A`.
pub fn image_hull(f: &IntervalFn, set: Interval, samples: usize) -> Result<Interval> {
    let set = require_within("set", set, f.domain())?;
    let n = if set.is_degenerate() {
        1
    } else {
        samples.max(2)
    };
    let mut pts = uniform_grid(set.lo(), set.hi(), n);
    let first = f.eval(pts.next().unwrap_or(set.lo()))?;
    pts.try_fold(first, |acc, z| Ok(acc.hull(f.eval(z)?)))
}

/// Set-wise form of the set-valued check:
/// `t·F(B) + m(1 − t)·F(A) ⊆ F(mAB / (tmA + (1 − t)B))` for every grid `t`.
///
/// The combination set is the hull of the four corner combinations, which
/// is exact because the combination is nondecreasing in each argument.
/// Counterexamples report `(A.lo, B.lo, t)`.
pub fn check_svf_setwise(
    f: &IntervalFn,
    a: Interval,
    b: Interval,
    params: &HarmonicParams,
) -> Result<ConvexityReport> {
    params.validate()?;
    require_positive(a)?;
    require_positive(b)?;
    let m = params.m;
    let fa = image_hull(f, a, params.samples)?;
    let fb = image_hull(f, b, params.samples)?;
    let mut acc = Scan::default();
    for t in params.t_grid() {
        let corners = [
            harmonic_combination(a.lo(), b.lo(), t, m),
            harmonic_combination(a.lo(), b.hi(), t, m),
            harmonic_combination(a.hi(), b.lo(), t, m),
            harmonic_combination(a.hi(), b.hi(), t, m),
        ];
        let image = corners[1..]
            .iter()
            .fold(Interval::point(corners[0]), |s, &c| s.hull_point(c));
        let image = require_within("combination set", image, f.domain())?;
        let target = image_hull(f, image, params.samples)?;
        let combined = fb.scale(t).add(fa.scale(m * (1.0 - t)));
        acc.checked += 1;
        acc.offer(
            combined.inclusion_margin(target),
            Triple::new(a.lo(), b.lo(), t),
        );
    }
    acc.into_report(params.tol)
}
