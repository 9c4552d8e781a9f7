//! Interval-valued functions under harmonic m-convexity.
//!
//! The crate builds interval-valued maps `F(x) = [f₁(x), f₂(x)]` on
//! positive domains from expression strings, combines them (union of nested
//! maps, `λF + G`, cartesian and pointwise products), certifies or falsifies
//! the inclusion
//!
//! ```text
//! t·F(y) + m(1 − t)·F(x) ⊆ F(mxy / (tmx + (1 − t)y))
//! ```
//!
//! on sample grids, and checks Hermite–Hadamard-type bounds for the
//! weighted Aumann mean `(ab/(b − a)) ∫_a^b F(x)/x² dx`.
//!
//! ```
//! use harmonica::{check_svf, HarmonicParams, Interval, IntervalFn};
//!
//! let domain = Interval::new(1.0, 3.0).unwrap();
//! let f = IntervalFn::parse("x^2", "12", domain).unwrap();
//! let report = check_svf(&f, &HarmonicParams::default()).unwrap();
//! assert!(report.is_certified());
//! ```
//!
//! Sampling loops run on rayon when the `parallel` feature (default) is
//! enabled; results are identical either way.

pub mod aumann;
pub mod convexity;
pub mod error;
pub mod exec;
pub mod expr;
pub mod interval;
pub mod setvalued;

pub use aumann::{
    adaptive_simpson, aumann_mean, aumann_mean_detailed, check_hh_scalar, check_hh_setvalued,
    check_hh_setvalued_with, integrate_weighted, AumannMean, HhReport, HhVerdict, QuadResult,
    ScalarHh, DEFAULT_QUAD_TOL,
};
pub use convexity::{
    check_scalar, check_svf, check_svf_setwise, harmonic_combination, image_hull,
    is_harmonic_m_convex_set, is_m_convex_set, is_starshaped, svf_margin, ConvexityReport,
    HarmonicParams, Triple, Verdict,
};
pub use error::{Error, Result};
pub use exec::{uniform_grid, Execution};
pub use expr::{BinOp, DomainError, Expr, Func, SyntaxError};
pub use interval::{Box2, Inclusion, Interval, IntervalError, SetValue, DEFAULT_TOL};
pub use setvalued::{
    cartesian, linear_combo, product_fn, product_lemma, union_fn, BoxFn, IntervalFn, SetValuedFn,
    DEFAULT_VALIDATION_SAMPLES, TABLE_POINTS,
};
