//! Closed bounded real intervals and 2-D boxes.
//!
//! Endpoints are `f64` with round-to-nearest arithmetic. Inclusion is never
//! tested with `==`; it goes through [`Interval::subset_within`], which
//! reports a signed margin and accepts a caller-supplied slack.

use std::fmt;
use std::ops::{Add, Mul};

use thiserror::Error;

/// Default slack for inclusion checks.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum IntervalError {
    #[error("interval endpoints out of order: [{lo}, {hi}]")]
    Unordered { lo: f64, hi: f64 },
    #[error("interval endpoint is not finite: [{lo}, {hi}]")]
    NonFinite { lo: f64, hi: f64 },
}

/// Result of a tolerance-aware inclusion test `a ⊆ b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inclusion {
    pub holds: bool,
    /// `min(a.lo - b.lo, b.hi - a.hi)`; nonnegative iff `a ⊆ b` exactly.
    pub margin: f64,
}

/// A closed interval `[lo, hi]` with finite endpoints and `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

#[allow(clippy::should_implement_trait)]
impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, IntervalError> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(IntervalError::NonFinite { lo, hi });
        }
        if lo > hi {
            return Err(IntervalError::Unordered { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// The degenerate interval `[c, c]`.
    ///
    /// # Panics
    /// If `c` is not finite.
    pub fn point(c: f64) -> Self {
        assert!(c.is_finite(), "degenerate interval needs a finite point");
        Interval { lo: c, hi: c }
    }

    /// Builds `[min(a, b), max(a, b)]`.
    pub fn spanning(a: f64, b: f64) -> Result<Self, IntervalError> {
        Interval::new(a.min(b), a.max(b))
    }

    /// Internal constructor for results of operations on valid intervals.
    #[inline]
    pub(crate) fn from_ordered(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi || lo.is_nan() || hi.is_nan(), "[{lo}, {hi}]");
        Interval { lo, hi }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    #[inline]
    pub fn midpoint(&self) -> f64 {
        self.lo + 0.5 * (self.hi - self.lo)
    }

    #[inline]
    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Minkowski sum.
    #[inline]
    pub fn add(self, other: Interval) -> Interval {
        Interval::from_ordered(self.lo + other.lo, self.hi + other.hi)
    }

    /// `{c·x : x ∈ self}`.
    #[inline]
    pub fn scale(self, c: f64) -> Interval {
        let (a, b) = (c * self.lo, c * self.hi);
        if c < 0.0 {
            Interval::from_ordered(b, a)
        } else {
            Interval::from_ordered(a, b)
        }
    }

    #[inline]
    pub fn neg(self) -> Interval {
        Interval::from_ordered(-self.hi, -self.lo)
    }

    #[inline]
    pub fn sub(self, other: Interval) -> Interval {
        self.add(other.neg())
    }

    /// Pointwise set product `{x·y}`: hull of the four endpoint products.
    pub fn mul(self, other: Interval) -> Interval {
        let p = [
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        ];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::from_ordered(lo, hi)
    }

    /// Smallest interval containing both operands. Equals the union when
    /// the operands overlap or are nested.
    #[inline]
    pub fn hull(self, other: Interval) -> Interval {
        Interval::from_ordered(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    /// Extends the hull to include a point.
    #[inline]
    pub fn hull_point(self, x: f64) -> Interval {
        Interval::from_ordered(self.lo.min(x), self.hi.max(x))
    }

    /// Tests `self ⊆ outer` with slack `tol >= 0`.
    #[inline]
    pub fn subset_within(self, outer: Interval, tol: f64) -> Inclusion {
        let margin = self.inclusion_margin(outer);
        Inclusion {
            holds: margin >= -tol,
            margin,
        }
    }

    #[inline]
    pub fn inclusion_margin(self, outer: Interval) -> f64 {
        (self.lo - outer.lo).min(outer.hi - self.hi)
    }

    /// Signed distance of `x` to the complement: positive inside, negative
    /// outside.
    #[inline]
    pub fn membership_margin(self, x: f64) -> f64 {
        (x - self.lo).min(self.hi - x)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval::add(self, rhs)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        Interval::mul(self, rhs)
    }
}

impl Mul<Interval> for f64 {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        rhs.scale(self)
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = IntervalError;
    fn try_from([lo, hi]: [f64; 2]) -> Result<Self, Self::Error> {
        Interval::new(lo, hi)
    }
}

/// Product set `first × second` in ℝ².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Box2 {
    pub first: Interval,
    pub second: Interval,
}

#[allow(clippy::should_implement_trait)]
impl Box2 {
    pub fn new(first: Interval, second: Interval) -> Self {
        Box2 { first, second }
    }

    pub fn add(self, other: Box2) -> Box2 {
        Box2::new(self.first.add(other.first), self.second.add(other.second))
    }

    pub fn scale(self, c: f64) -> Box2 {
        Box2::new(self.first.scale(c), self.second.scale(c))
    }

    /// A box is inside another iff each factor is; the margin is the
    /// smaller of the two factor margins.
    pub fn subset_within(self, outer: Box2, tol: f64) -> Inclusion {
        let margin = self.inclusion_margin(outer);
        Inclusion {
            holds: margin >= -tol,
            margin,
        }
    }

    pub fn inclusion_margin(self, outer: Box2) -> f64 {
        self.first
            .inclusion_margin(outer.first)
            .min(self.second.inclusion_margin(outer.second))
    }
}

impl fmt::Display for Box2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} × {}", self.first, self.second)
    }
}

/// Set values that support the operations used by the convexity checks:
/// Minkowski sum, scalar multiple and a signed inclusion margin.
pub trait SetValue: Copy + Send + Sync {
    fn minkowski_add(self, other: Self) -> Self;
    fn scaled(self, c: f64) -> Self;
    fn margin_in(self, outer: Self) -> f64;
}

impl SetValue for Interval {
    fn minkowski_add(self, other: Self) -> Self {
        self.add(other)
    }
    fn scaled(self, c: f64) -> Self {
        self.scale(c)
    }
    fn margin_in(self, outer: Self) -> f64 {
        self.inclusion_margin(outer)
    }
}

impl SetValue for Box2 {
    fn minkowski_add(self, other: Self) -> Self {
        self.add(other)
    }
    fn scaled(self, c: f64) -> Self {
        self.scale(c)
    }
    fn margin_in(self, outer: Self) -> f64 {
        self.inclusion_margin(outer)
    }
}
