use thiserror::Error;

use super::{BinOp, Expr, Func};
use crate::interval::Interval;

/// Evaluation left the real domain of some subterm.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{reason} in `{node}`")]
pub struct DomainError {
    /// The offending subterm, printed.
    pub node: String,
    pub reason: &'static str,
}

impl DomainError {
    fn at(node: &Expr, reason: &'static str) -> Self {
        DomainError {
            node: node.to_string(),
            reason,
        }
    }
}

fn finite(node: &Expr, v: f64) -> Result<f64, DomainError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(DomainError::at(node, "non-finite result"))
    }
}

fn finite_iv(node: &Expr, lo: f64, hi: f64) -> Result<Interval, DomainError> {
    Interval::new(lo, hi).map_err(|_| DomainError::at(node, "non-finite result"))
}

fn is_integer(v: f64) -> bool {
    v.fract() == 0.0
}

fn pow_point(node: &Expr, base: f64, exp: f64) -> Result<f64, DomainError> {
    if base < 0.0 && !is_integer(exp) {
        return Err(DomainError::at(
            node,
            "non-integer power of a negative base",
        ));
    }
    if base == 0.0 && exp < 0.0 {
        return Err(DomainError::at(node, "division by zero"));
    }
    finite(node, base.powf(exp))
}

impl Expr {
    /// Evaluates at `x` in IEEE double arithmetic.
    pub fn eval(&self, x: f64) -> Result<f64, DomainError> {
        match self {
            Expr::Const(c) => Ok(*c),
            Expr::Var => Ok(x),
            Expr::Neg(e) => Ok(-e.eval(x)?),
            Expr::Binary(op, l, r) => {
                let a = l.eval(x)?;
                let b = r.eval(x)?;
                match op {
                    BinOp::Add => finite(self, a + b),
                    BinOp::Sub => finite(self, a - b),
                    BinOp::Mul => finite(self, a * b),
                    BinOp::Div if b == 0.0 => Err(DomainError::at(self, "division by zero")),
                    BinOp::Div => finite(self, a / b),
                    BinOp::Pow => pow_point(self, a, b),
                }
            }
            Expr::Call(func, e) => {
                let a = e.eval(x)?;
                match func {
                    Func::Exp => finite(self, a.exp()),
                    Func::Log if a <= 0.0 => {
                        Err(DomainError::at(self, "logarithm of a non-positive value"))
                    }
                    Func::Log => Ok(a.ln()),
                    Func::Sqrt if a < 0.0 => {
                        Err(DomainError::at(self, "square root of a negative value"))
                    }
                    Func::Sqrt => Ok(a.sqrt()),
                    Func::Abs => Ok(a.abs()),
                }
            }
        }
    }

    /// Natural interval extension: an enclosure of `{eval(t) : t ∈ x}`.
    ///
    /// Each subterm is evaluated over intervals independently, so repeated
    /// occurrences of `x` are treated as unrelated (`x - x` over `[0, 1]`
    /// gives `[-1, 1]`).
    pub fn eval_interval(&self, x: Interval) -> Result<Interval, DomainError> {
        match self {
            Expr::Const(c) => finite_iv(self, *c, *c),
            Expr::Var => Ok(x),
            Expr::Neg(e) => Ok(e.eval_interval(x)?.neg()),
            Expr::Binary(op, l, r) => {
                let a = l.eval_interval(x)?;
                let b = r.eval_interval(x)?;
                let out = match op {
                    BinOp::Add => a.add(b),
                    BinOp::Sub => a.sub(b),
                    BinOp::Mul => a.mul(b),
                    BinOp::Div => {
                        if b.contains(0.0) {
                            return Err(DomainError::at(
                                self,
                                "division by an interval containing zero",
                            ));
                        }
                        a.mul(Interval::from_ordered(1.0 / b.hi(), 1.0 / b.lo()))
                    }
                    BinOp::Pow => return pow_interval(self, a, b),
                };
                finite_iv(self, out.lo(), out.hi())
            }
            Expr::Call(func, e) => {
                let a = e.eval_interval(x)?;
                match func {
                    Func::Exp => finite_iv(self, a.lo().exp(), a.hi().exp()),
                    Func::Log if a.lo() <= 0.0 => {
                        Err(DomainError::at(self, "logarithm of a non-positive value"))
                    }
                    Func::Log => Ok(Interval::from_ordered(a.lo().ln(), a.hi().ln())),
                    Func::Sqrt if a.lo() < 0.0 => {
                        Err(DomainError::at(self, "square root of a negative value"))
                    }
                    Func::Sqrt => Ok(Interval::from_ordered(a.lo().sqrt(), a.hi().sqrt())),
                    Func::Abs => Ok(if a.lo() >= 0.0 {
                        a
                    } else if a.hi() <= 0.0 {
                        a.neg()
                    } else {
                        Interval::from_ordered(0.0, (-a.lo()).max(a.hi()))
                    }),
                }
            }
        }
    }
}

fn pow_interval(node: &Expr, base: Interval, exp: Interval) -> Result<Interval, DomainError> {
    if exp.is_degenerate() && is_integer(exp.lo()) {
        let n = exp.lo();
        if n == 0.0 {
            return Ok(Interval::point(1.0));
        }
        if n < 0.0 && base.contains(0.0) {
            return Err(DomainError::at(
                node,
                "division by an interval containing zero",
            ));
        }
        let (p, q) = (base.lo().powf(n), base.hi().powf(n));
        let even = (n / 2.0).fract() == 0.0;
        let out = if even && base.lo() < 0.0 && base.hi() > 0.0 {
            // only reachable for n > 0: the minimum sits at zero
            (0.0, p.max(q))
        } else {
            (p.min(q), p.max(q))
        };
        return finite_iv(node, out.0, out.1);
    }
    if base.lo() < 0.0 {
        return Err(DomainError::at(
            node,
            "non-integer power of a negative base",
        ));
    }
    if base.lo() == 0.0 && exp.lo() < 0.0 {
        return Err(DomainError::at(node, "division by zero"));
    }
    // b^e is monotone in each argument separately on b > 0, and its only
    // critical point (1, 0) is a saddle, so the extremes sit at the corners.
    let corners = [
        base.lo().powf(exp.lo()),
        base.lo().powf(exp.hi()),
        base.hi().powf(exp.lo()),
        base.hi().powf(exp.hi()),
    ];
    let lo = corners.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = corners.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    finite_iv(node, lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::strategies;
    use proptest::prelude::*;

    fn ev(text: &str, x: f64) -> Result<f64, DomainError> {
        Expr::parse(text).unwrap().eval(x)
    }

    fn evi(text: &str, lo: f64, hi: f64) -> Result<Interval, DomainError> {
        Expr::parse(text)
            .unwrap()
            .eval_interval(Interval::new(lo, hi).unwrap())
    }

    #[test]
    fn point_examples() {
        assert_eq!(ev("x^2", 3.0), Ok(9.0));
        assert_eq!(ev("exp(0)*x", 5.0), Ok(5.0));
        let err = ev("1/x", 0.0).unwrap_err();
        assert_eq!(err.reason, "division by zero");
        assert_eq!(err.node, "1 / x");
    }

    #[test]
    fn point_domain_errors_name_the_node() {
        assert_eq!(ev("2 + log(x - 1)", 0.5).unwrap_err().node, "log(x - 1)");
        assert!(ev("sqrt(x)", -1.0).is_err());
        assert!(ev("x^0.5", -4.0).is_err());
        assert_eq!(ev("x^3", -2.0), Ok(-8.0));
        assert!(ev("x^-1", 0.0).is_err());
        assert!(ev("exp(x)", 1000.0).is_err());
        assert_eq!(ev("abs(x)", -2.5), Ok(2.5));
    }

    #[test]
    fn interval_examples() {
        assert_eq!(evi("x^2", 1.0, 2.0), Ok(Interval::new(1.0, 4.0).unwrap()));
        assert_eq!(
            evi("x - x", 0.0, 1.0),
            Ok(Interval::new(-1.0, 1.0).unwrap())
        );
        assert_eq!(evi("1/x", 1.0, 2.0), Ok(Interval::new(0.5, 1.0).unwrap()));
    }

    #[test]
    fn interval_powers() {
        assert_eq!(evi("x^2", -1.0, 2.0), Ok(Interval::new(0.0, 4.0).unwrap()));
        assert_eq!(evi("x^3", -1.0, 2.0), Ok(Interval::new(-1.0, 8.0).unwrap()));
        assert_eq!(evi("x^-2", 1.0, 2.0), Ok(Interval::new(0.25, 1.0).unwrap()));
        assert!(evi("x^-2", -1.0, 2.0).is_err());
        assert!(evi("x^0.5", -1.0, 2.0).is_err());
        assert_eq!(evi("x^0.5", 0.0, 4.0), Ok(Interval::new(0.0, 2.0).unwrap()));
        assert_eq!(evi("2^x", 1.0, 3.0), Ok(Interval::new(2.0, 8.0).unwrap()));
        assert_eq!(evi("x^x", 0.5, 2.0).unwrap().hi(), 4.0);
        assert!(evi("log(x)", 0.0, 1.0).is_err());
        assert!(evi("1/(x - 1)", 0.0, 2.0).is_err());
        assert_eq!(
            evi("abs(x)", -3.0, 2.0),
            Ok(Interval::new(0.0, 3.0).unwrap())
        );
    }

    fn point_in(iv: Interval) -> impl Strategy<Value = (Interval, f64)> {
        (0.0..=1.0f64).prop_map(move |s| (iv, iv.lo() + s * iv.width()))
    }

    fn interval_and_point() -> impl Strategy<Value = (Interval, f64)> {
        (-4.0..4.0f64, 0.0..3.0f64)
            .prop_map(|(lo, w)| Interval::new(lo, lo + w).unwrap())
            .prop_flat_map(point_in)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn interval_extension_encloses_point_values(
            e in strategies::expr(6),
            (iv, t) in interval_and_point(),
        ) {
            // only enclosures that exist are checked
            if let Ok(enc) = e.eval_interval(iv) {
                let v = e.eval(t);
                prop_assert!(v.is_ok(), "{} fails at {} but encloses on {}", e, t, iv);
                let v = v.unwrap();
                let tol = 1e-12 * (1.0 + v.abs());
                prop_assert!(enc.lo() - tol <= v && v <= enc.hi() + tol,
                    "{} at {}: {} not in {}", e, t, v, enc);
            }
        }
    }
}
