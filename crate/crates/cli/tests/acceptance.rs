//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use harmonica::{
    aumann_mean, cartesian, check_hh_scalar, check_hh_setvalued, check_scalar, check_svf,
    image_hull, is_harmonic_m_convex_set, is_m_convex_set, linear_combo, product_fn, union_fn,
    BinOp, Execution, Expr, Func, HarmonicParams, Interval, IntervalFn, Triple, Verdict,
    DEFAULT_VALIDATION_SAMPLES,
};
use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn iv(lo: f64, hi: f64) -> Interval {
    Interval::new(lo, hi).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn within_budget(start: Instant, budget: Duration) -> Result<Duration, String> {
    let spent = start.elapsed();
    if spent < budget {
        Ok(spent)
    } else {
        Err(format!("took {spent:.2?}, budget {budget:.2?}"))
    }
}

fn ac1_normalization() -> Outcome {
    let start = Instant::now();
    let mut r = rng(101);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let a = r.random_range(0.1..5.0);
        let b = a + r.random_range(0.1..5.0);
        let c1 = r.random_range(-10.0..10.0);
        let c2 = c1 + r.random_range(0.0..10.0);
        let f = IntervalFn::constant(iv(c1, c2), iv(a, b)).map_err(|e| e.to_string())?;
        let mean = aumann_mean(&f, a, b, 1e-12).map_err(|e| e.to_string())?;
        let err = (mean.lo() - c1).abs().max((mean.hi() - c2).abs());
        ensure!(err <= 1e-10, "[{c1}, {c2}] on [{a}, {b}] gave {mean}");
        worst = worst.max(err);
    }
    let spent = within_budget(start, Duration::from_secs(1))?;
    Ok(format!(
        "20 constant maps, max endpoint error {worst:.1e}, {spent:.2?}"
    ))
}

fn ac2_analytic() -> Outcome {
    let (a, b) = (1.0, 2.0);
    let f = IntervalFn::parse("x^2", "x^2+1", iv(a, b)).map_err(|e| e.to_string())?;
    let mean = aumann_mean(&f, a, b, 1e-12).map_err(|e| e.to_string())?;
    // ∫x²/x² = x and ∫(x²+1)/x² = x − 1/x
    let scale = a * b / (b - a);
    let lo = scale * (b - a);
    let hi = scale * ((b - 1.0 / b) - (a - 1.0 / a));
    let err = (mean.lo() - lo).abs().max((mean.hi() - hi).abs());
    ensure!(err <= 1e-9, "got {mean}, expected [{lo}, {hi}]");
    Ok(format!(
        "[x², x²+1] on [1, 2] gives {mean}, error {err:.1e}"
    ))
}

fn ac3_scalar_hh() -> Outcome {
    let sq = Expr::parse("x^2").unwrap();
    let r = check_hh_scalar(&sq, 1.0, 2.0, 1.0, 1e-9).map_err(|e| e.to_string())?;
    ensure!(
        (r.lhs - 2.0).abs() <= 1e-9 && (r.rhs - 2.5).abs() <= 1e-9 && r.holds,
        "x²: {r:?}"
    );
    let mut rg = rng(303);
    let mut slack = f64::INFINITY;
    for i in 0..50 {
        let c = r_dyadic(&mut rg, 0.0, 5.0);
        let d = r_dyadic(&mut rg, 0.0, 5.0);
        let a = rg.random_range(0.05..9.5);
        let b = rg.random_range(a + 0.05..=10.0);
        let f = Expr::parse(&format!("{c}*x^2 + {d}")).unwrap();
        let params = HarmonicParams {
            seed: i,
            ..HarmonicParams::default()
        };
        let cert = check_scalar(&f, iv(a, b), &params).map_err(|e| e.to_string())?;
        ensure!(
            cert.is_certified(),
            "{f} on [{a}, {b}] not certified: {cert:?}"
        );
        let hh = check_hh_scalar(&f, a, b, 1.0, 1e-8).map_err(|e| e.to_string())?;
        ensure!(hh.holds, "{f} on [{a}, {b}]: {hh:?}");
        // (ab/(b−a)) ∫ (c + d/x²) dx = c·ab + d
        let exact = c * a * b + d;
        ensure!(
            (hh.lhs - exact).abs() <= 1e-8 * (1.0 + exact.abs()),
            "{f}: lhs {} vs {exact}",
            hh.lhs
        );
        slack = slack.min(hh.rhs - hh.lhs);
    }
    Ok(format!(
        "x² gives 2.0 ≤ 2.5; 50 certified c·x²+d hold, min rhs − lhs {slack:.3e}"
    ))
}

fn r_dyadic(r: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (r.random_range(lo..hi) * 64.0).round() / 64.0
}

fn ac4_setvalued_hh() -> Outcome {
    let start = Instant::now();
    let mut r = rng(404);
    let mut count = 0;
    let mut min_margin = f64::INFINITY;
    for m in [1.0, 0.75, 0.5] {
        for _ in 0..9 {
            let (a, b) = (1.0, 2.0);
            let end = b / m + r.random_range(0.0..2.0);
            let c = end * end + r.random_range(0.0..10.0);
            let f =
                IntervalFn::parse("x^2", &c.to_string(), iv(a, end)).map_err(|e| e.to_string())?;
            let rep = check_hh_setvalued(&f, a, b, m, 1e-8).map_err(|e| e.to_string())?;
            ensure!(
                rep.verdict.as_str() == "HOLDS_WITHIN_TOL"
                    && rep.margin_ab >= -1e-8
                    && rep.margin_ba >= -1e-8,
                "C = {c}, m = {m}: {rep:?}"
            );
            // H = [ab, C], S₁ = [(a² + m(b/m)²)/2, (1+m)C/2], S₂ = [(m(a/m)² + b²)/2, (1+m)C/2]
            let expect = [
                (rep.integral_mean, iv(a * b, c)),
                (
                    rep.half_sum_ab,
                    iv(0.5 * (a * a + b * b / m), 0.5 * (1.0 + m) * c),
                ),
                (
                    rep.half_sum_ba,
                    iv(0.5 * (a * a / m + b * b), 0.5 * (1.0 + m) * c),
                ),
            ];
            for (got, want) in expect {
                let err = (got.lo() - want.lo())
                    .abs()
                    .max((got.hi() - want.hi()).abs());
                ensure!(err <= 1e-9 * (1.0 + c), "C = {c}, m = {m}: {got} vs {want}");
            }
            min_margin = min_margin.min(rep.margin_ab.min(rep.margin_ba));
            count += 1;
        }
    }
    let spent = within_budget(start, Duration::from_secs(10))?;
    Ok(format!(
        "{count} instances over m ∈ {{1, 0.75, 0.5}}, min margin {min_margin:.3e}, {spent:.2?}"
    ))
}

fn ac5_falsifiers() -> Outcome {
    let f = IntervalFn::parse("2*x^2", "3*x^2", iv(1.0, 3.0)).unwrap();
    let params = HarmonicParams::default();
    let rep = check_svf(&f, &params).map_err(|e| e.to_string())?;
    let Some(Triple { x, y, t }) = rep.counterexample else {
        return Err(format!("[2x², 3x²] not falsified: {rep:?}"));
    };
    ensure!(rep.verdict == Verdict::Falsified, "{rep:?}");
    // recompute the inclusion at the witness by hand
    let h = x * y / (t * x + (1.0 - t) * y);
    let comb = (
        t * 2.0 * y * y + (1.0 - t) * 2.0 * x * x,
        t * 3.0 * y * y + (1.0 - t) * 3.0 * x * x,
    );
    let margin = (comb.0 - 2.0 * h * h).min(3.0 * h * h - comb.1);
    ensure!(
        margin < -params.tol,
        "witness ({x}, {y}, {t}) has margin {margin}"
    );

    let g = Expr::parse("-x^2").unwrap();
    let small = HarmonicParams {
        samples: 2,
        grid_t: 3,
        trials: 0,
        ..HarmonicParams::default()
    };
    let s = check_scalar(&g, iv(1.0, 3.0), &small).map_err(|e| e.to_string())?;
    ensure!(
        s.counterexample == Some(Triple::new(1.0, 3.0, 0.5)),
        "{s:?}"
    );
    // LHS = −(1.5)² = −2.25, RHS = ½(−9) + ½(−1) = −5
    ensure!((s.worst_margin - (-5.0 - -2.25)).abs() < 1e-12, "{s:?}");
    let full = check_scalar(&g, iv(1.0, 3.0), &params).map_err(|e| e.to_string())?;
    ensure!(full.verdict == Verdict::Falsified, "{full:?}");
    Ok(format!(
        "[2x², 3x²] falsified at (x={x}, y={y}, t={t}) margin {margin:.4}; −x² falsified at (1, 3, 0.5): −2.25 > −5"
    ))
}

/// A harmonically m-convex map on `[p, q]`: lower `c·x^j`, upper `C − e·x²`
/// (or constant), with `upper(q) = lower(q) + s`.
struct Member {
    lower: String,
    upper: String,
    lower_at_q: f64,
    slack: f64,
}

fn member(r: &mut ChaCha8Rng, q: f64, constant_upper: bool) -> Member {
    let c = r.random_range(0.1..2.0);
    let j = r.random_range(1..=2);
    let lower_at_q = c * q.powi(j);
    let slack = r.random_range(0.1..2.0) * lower_at_q;
    let e = if constant_upper {
        0.0
    } else {
        r.random_range(0.0..0.5)
    };
    let top = lower_at_q + slack + e * q * q;
    let upper = if constant_upper {
        format!("{top}")
    } else {
        format!("{top} - {e}*x^2")
    };
    Member {
        lower: format!("{c}*x^{j}"),
        upper,
        lower_at_q,
        slack,
    }
}

fn build(m: &Member, domain: Interval) -> Result<IntervalFn, String> {
    IntervalFn::parse(&m.lower, &m.upper, domain)
        .map_err(|e| format!("{} / {}: {e}", m.lower, m.upper))
}

fn ac6_closure() -> Outcome {
    let mut r = rng(606);
    let mut checks = 0;
    for i in 0..100u64 {
        let p = r.random_range(0.5..2.0);
        let q = p + r.random_range(0.5..3.0);
        let domain = iv(p, q);
        let m = [1.0, 0.75, 0.5][r.random_range(0..3)];
        let params = HarmonicParams {
            m,
            samples: 17,
            grid_t: 9,
            trials: 200,
            seed: i,
            ..HarmonicParams::default()
        };
        let constant = r.random_bool(0.3);
        let fm = member(&mut r, q, constant);
        let gm = member(&mut r, q, true);
        let f = build(&fm, domain)?;
        let g = build(&gm, domain)?;
        for (name, h) in [("F", &f), ("G", &g)] {
            let rep = check_svf(h, &params).map_err(|e| e.to_string())?;
            ensure!(
                rep.is_certified(),
                "pair {i}: {name} = {} not certified: {rep:?}",
                h.describe()
            );
        }
        let lambda = if i % 10 == 0 {
            0.0
        } else {
            r.random_range(0.0..3.0)
        };
        let k = 1.0 + r.random_range(0.0..0.9) * fm.slack / fm.lower_at_q;
        let inner = build(
            &Member {
                lower: format!("{k}*({})", fm.lower),
                upper: fm.upper.clone(),
                lower_at_q: 0.0,
                slack: 0.0,
            },
            domain,
        )?;
        let err = |e: harmonica::Error| format!("pair {i}: {e}");
        let results = [
            (
                "λF + G",
                check_svf(&linear_combo(lambda, &f, &g).map_err(err)?, &params),
            ),
            (
                "F × G",
                check_svf(&cartesian(&f, &g).map_err(err)?, &params),
            ),
            (
                "F ∪ F'",
                check_svf(
                    &union_fn(&f, &inner, DEFAULT_VALIDATION_SAMPLES, 1e-9).map_err(err)?,
                    &params,
                ),
            ),
            (
                "F' ∪ F",
                check_svf(
                    &union_fn(&inner, &f, DEFAULT_VALIDATION_SAMPLES, 1e-9).map_err(err)?,
                    &params,
                ),
            ),
            (
                "F · G",
                check_svf(
                    &product_fn(&f, &g, DEFAULT_VALIDATION_SAMPLES).map_err(err)?,
                    &params,
                ),
            ),
        ];
        for (name, rep) in results {
            let rep = rep.map_err(err)?;
            ensure!(
                rep.is_certified(),
                "pair {i} (m = {m}): {name} falsified at {:?}, F = {}, G = {}",
                rep.counterexample,
                f.describe(),
                g.describe()
            );
            checks += 1;
        }
    }
    Ok(format!(
        "100 certified pairs, {checks} combined maps all CERTIFIED_ON_SAMPLES"
    ))
}

fn ac7_image() -> Outcome {
    let mut r = rng(707);
    let mut rejected = 0;
    for i in 0..50u64 {
        let p = r.random_range(0.5..2.0);
        let q = p + r.random_range(0.5..3.0);
        let params = HarmonicParams {
            samples: 17,
            grid_t: 9,
            trials: 200,
            seed: i,
            ..HarmonicParams::default()
        };
        let constant = r.random_bool(0.3);
        let f = build(&member(&mut r, q, constant), iv(p, q))?;
        ensure!(
            check_svf(&f, &params)
                .map_err(|e| e.to_string())?
                .is_certified(),
            "F {i} not certified"
        );
        let u = r.random_range(p..q);
        let a = iv(u, r.random_range(u..=q));
        let sub = is_harmonic_m_convex_set(a, 1.0, &params).map_err(|e| e.to_string())?;
        ensure!(sub.is_certified(), "sub-domain {a}: {sub:?}");
        let image = image_hull(&f, a, 65).map_err(|e| e.to_string())?;
        let tight = HarmonicParams {
            tol: 1e-8,
            ..params
        };
        let rep = is_m_convex_set(image, 1.0, &tight).map_err(|e| e.to_string())?;
        ensure!(rep.is_certified(), "F({a}) = {image}: {rep:?}");
        for m in [0.75, 0.5] {
            let rep = is_harmonic_m_convex_set(a, m, &params).map_err(|e| e.to_string())?;
            if rep.verdict == Verdict::Falsified {
                rejected += 1;
            }
        }
    }
    ensure!(
        rejected == 100,
        "only {rejected}/100 sub-domains rejected for m < 1"
    );
    Ok("50 images m-convex at m = 1; for m ∈ {0.75, 0.5} all 100 candidate sub-domains are not harmonically m-convex".into())
}

fn rat(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite")
}

/// Quadratic with dyadic coefficients `[c0, c1, c2]`.
fn poly_text(c: [f64; 3]) -> String {
    format!("({})*x^2 + ({})*x + ({})", c[2], c[1], c[0])
}

fn poly_exact(c: &[BigRational; 3], x: &BigRational) -> BigRational {
    &c[0] + &c[1] * x + &c[2] * x * x
}

/// Worst `(margin, x, y, t)` on the exhaustive grid, straight from the
/// definition, in exact arithmetic.
#[allow(clippy::type_complexity)]
fn oracle_worst(
    lo: &[BigRational; 3],
    hi: &[BigRational; 3],
    p: &BigRational,
    q: &BigRational,
    m: &BigRational,
) -> Option<(BigRational, [BigRational; 3])> {
    let one = BigRational::from_integer(1.into());
    let eight = BigRational::from_integer(8.into());
    let grid: Vec<BigRational> = (0..9)
        .map(|i| p + (q - p) * BigRational::from_integer(i.into()) / &eight)
        .collect();
    let ts: Vec<BigRational> = (0..9)
        .map(|k| BigRational::from_integer(k.into()) / &eight)
        .collect();
    let mut worst: Option<(BigRational, [BigRational; 3])> = None;
    for x in &grid {
        for y in &grid {
            for t in &ts {
                let h = m * x * y / (t * m * x + (&one - t) * y);
                if &h < p || &h > q {
                    continue;
                }
                let w = m * (&one - t);
                let comb_lo = t * poly_exact(lo, y) + &w * poly_exact(lo, x);
                let comb_hi = t * poly_exact(hi, y) + &w * poly_exact(hi, x);
                let a = comb_lo - poly_exact(lo, &h);
                let b = poly_exact(hi, &h) - comb_hi;
                let margin = if a < b { a } else { b };
                let cand = (margin, [x.clone(), y.clone(), t.clone()]);
                if worst.as_ref().is_none_or(|w| cand < *w) {
                    worst = Some(cand);
                }
            }
        }
    }
    worst
}

fn ac8_brute_force() -> Outcome {
    let mut r = rng(808);
    let mut falsified = 0;
    for i in 0..50u64 {
        let p = f64::from(r.random_range(1..=8)) / 4.0;
        let q = p + f64::from(r.random_range(1..=8)) / 2.0;
        let m = [1.0, 0.75, 0.5][r.random_range(0..3)];
        let quarter =
            |r: &mut ChaCha8Rng, lo: i32, hi: i32| f64::from(r.random_range(lo..=hi)) / 4.0;
        let (lo, delta) = if i % 2 == 0 {
            // harmonically m-convex candidates: [a2x² + a1x, C − ex²]
            let (a2, a1, e) = (
                quarter(&mut r, 0, 8),
                quarter(&mut r, 0, 8),
                quarter(&mut r, 0, 4),
            );
            let s = quarter(&mut r, 1, 8);
            let top = (a2 + e) * q * q + a1 * q + s;
            ([0.0, a1, a2], [top, -a1, -a2 - e])
        } else {
            let lo = [
                quarter(&mut r, -8, 8),
                quarter(&mut r, -8, 8),
                quarter(&mut r, -8, 8),
            ];
            (
                lo,
                [
                    quarter(&mut r, 1, 8),
                    quarter(&mut r, 0, 8),
                    quarter(&mut r, 0, 8),
                ],
            )
        };
        let hi = [lo[0] + delta[0], lo[1] + delta[1], lo[2] + delta[2]];
        let f = IntervalFn::parse(&poly_text(lo), &poly_text(hi), iv(p, q))
            .map_err(|e| format!("function {i}: {e}"))?;
        let params = HarmonicParams {
            m,
            samples: 9,
            grid_t: 9,
            trials: 0,
            seed: i,
            ..HarmonicParams::default()
        };
        let rep = check_svf(&f, &params).map_err(|e| e.to_string())?;
        let exact = |c: [f64; 3]| [rat(c[0]), rat(c[1]), rat(c[2])];
        let worst = oracle_worst(&exact(lo), &exact(hi), &rat(p), &rat(q), &rat(m));
        let tol = rat(params.tol);
        let oracle_cx = worst
            .filter(|(margin, _)| *margin < -tol.clone())
            .map(|(_, at)| at);
        let oracle_verdict = if oracle_cx.is_some() {
            Verdict::Falsified
        } else {
            Verdict::CertifiedOnSamples
        };
        ensure!(
            rep.verdict == oracle_verdict,
            "function {i} ({}): {:?} vs oracle {:?}",
            f.describe(),
            rep.verdict,
            oracle_verdict
        );
        let ours = rep.counterexample.map(|c| [rat(c.x), rat(c.y), rat(c.t)]);
        ensure!(
            ours == oracle_cx,
            "function {i} ({}): counterexample {:?} vs oracle {:?}",
            f.describe(),
            rep.counterexample,
            oracle_cx
        );
        if oracle_verdict == Verdict::Falsified {
            falsified += 1;
        }
    }
    Ok(format!(
        "50 functions on 9×9×9 dyadic grids ({falsified} falsified, {} certified), verdicts and counterexamples identical",
        50 - falsified
    ))
}

fn ac9_determinism() -> Outcome {
    let commands: [&[&str]; 8] = [
        &[
            "check-fn",
            "--f",
            "x^2 + exp(x)",
            "--domain",
            "1:3",
            "--trials",
            "300",
        ],
        &[
            "check-svf",
            "--f1",
            "2*x^2",
            "--f2",
            "3*x^2",
            "--domain",
            "1:3",
            "--trials",
            "300",
        ],
        &["check-set", "--set", "1:2", "--m", "0.5", "--trials", "300"],
        &["starshaped", "--set", "0:2", "--trials", "300"],
        &[
            "integrate",
            "--f1",
            "sqrt(x)",
            "--f2",
            "exp(x)",
            "--domain",
            "1:2",
        ],
        &[
            "hh", "--f1", "x^2", "--f2", "40", "--domain", "1:2", "--m", "0.5",
        ],
        &["hh-scalar", "--f", "x^2", "--domain", "1:2"],
        &[
            "ops", "--op", "product", "--f1", "x", "--f2", "5", "--g1", "x^2", "--g2", "20-x^2",
            "--domain", "1:2",
        ],
    ];
    for args in commands {
        let argv: Vec<&str> = std::iter::once("harmonica")
            .chain(args.iter().copied())
            .chain(["--seed", "4242"])
            .collect();
        let mut first = Vec::new();
        let mut second = Vec::new();
        harmonica_cli::run(argv.clone(), &mut first);
        harmonica_cli::run(argv.clone(), &mut second);
        ensure!(first == second, "{args:?}: in-process runs differ");
        let out = Command::new(env!("CARGO_BIN_EXE_harmonica"))
            .args(&argv[1..])
            .env_remove("HARMONICA_SEED")
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(
            out.stdout == first,
            "{args:?}: binary output differs from in-process run"
        );
    }
    let f = IntervalFn::parse("2*x^2", "3*x^2", iv(1.0, 3.0)).unwrap();
    let seq = HarmonicParams {
        execution: Execution::Sequential,
        seed: 4242,
        ..HarmonicParams::default()
    };
    let par = HarmonicParams {
        execution: Execution::Parallel,
        ..seq
    };
    ensure!(
        check_svf(&f, &seq).ok() == check_svf(&f, &par).ok(),
        "sequential and parallel reports differ"
    );
    Ok(
        "8 commands byte-identical across repeated and out-of-process runs; sequential = parallel"
            .into(),
    )
}

fn random_expr(r: &mut ChaCha8Rng, depth: u32) -> Expr {
    if depth == 0 || r.random_bool(0.25) {
        return if r.random_bool(0.5) {
            Expr::Var
        } else if r.random_bool(0.5) {
            Expr::Const(f64::from(r.random_range(0..10)))
        } else {
            Expr::Const(r.random_range(0.0..10.0))
        };
    }
    match r.random_range(0..6) {
        0 => Expr::Neg(Box::new(random_expr(r, depth - 1))),
        1 => Expr::Call(
            Func::ALL[r.random_range(0..4)],
            Box::new(random_expr(r, depth - 1)),
        ),
        _ => {
            let op =
                [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Pow][r.random_range(0..5)];
            Expr::Binary(
                op,
                Box::new(random_expr(r, depth - 1)),
                Box::new(random_expr(r, depth - 1)),
            )
        }
    }
}

fn ac10_parser() -> Outcome {
    let mut r = rng(1010);
    let mut enclosures = 0;
    let mut points = 0;
    for _ in 0..1000 {
        let e = random_expr(&mut r, 5);
        let printed = e.to_string();
        let back = Expr::parse(&printed).map_err(|err| format!("{printed:?}: {err}"))?;
        ensure!(back == e, "{printed:?} re-parsed as {back:?}");
        let lo = r.random_range(-3.0..3.0);
        let x = iv(lo, lo + r.random_range(0.0..2.0));
        let Ok(enc) = e.eval_interval(x) else {
            continue;
        };
        enclosures += 1;
        for k in 0..=16 {
            let pt = x.lo() + x.width() * f64::from(k) / 16.0;
            if let Ok(v) = e.eval(pt) {
                let tol = 1e-12 * (1.0 + v.abs());
                ensure!(
                    enc.lo() - tol <= v && v <= enc.hi() + tol,
                    "{printed} at {pt}: {v} outside {enc} over {x}"
                );
                points += 1;
            }
        }
    }
    ensure!(enclosures >= 300, "only {enclosures} enclosures evaluated");
    Ok(format!(
        "1000 round-trips; {points} points inside {enclosures} enclosures"
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1", "normalization fixture", ac1_normalization),
        ("AC2", "analytic fixture", ac2_analytic),
        ("AC3", "scalar Hermite–Hadamard", ac3_scalar_hh),
        ("AC4", "set-valued Hermite–Hadamard", ac4_setvalued_hh),
        ("AC5", "falsifier sensitivity", ac5_falsifiers),
        ("AC6", "closure operations", ac6_closure),
        ("AC7", "image m-convexity", ac7_image),
        ("AC8", "brute-force equivalence", ac8_brute_force),
        ("AC9", "determinism", ac9_determinism),
        ("AC10", "parser round-trip and soundness", ac10_parser),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {id:<5} {name}: {detail} [{elapsed:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id:<5} {name}: {detail} [{elapsed:.2?}]");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
