use harmonica::{
    aumann_mean_detailed, cartesian, check_hh_scalar, check_hh_setvalued, check_scalar, check_svf,
    check_svf_setwise, is_m_convex_set, is_starshaped, linear_combo, product_fn, union_fn,
    ConvexityReport, Execution, Expr, HarmonicParams, HhVerdict, Interval, IntervalFn, Verdict,
    DEFAULT_QUAD_TOL, DEFAULT_TOL, DEFAULT_VALIDATION_SAMPLES,
};
use serde_json::json;

use crate::config::{CommandName, Op, RunConfig};
use crate::report::{interval, pair, Report};
use crate::CliError;

const P_M: u8 = 1;
const P_ALPHA: u8 = 2;
const P_TOL: u8 = 4;
const P_SAMPLES: u8 = 8;
const P_GRID: u8 = 16;
const P_TRIALS: u8 = 32;
const P_ALL: u8 = P_M | P_TOL | P_SAMPLES | P_GRID | P_TRIALS;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn text<'a>(value: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    value
        .as_deref()
        .ok_or_else(|| usage(format!("--{flag} is required")))
}

fn positive_interval(what: &str, (a, b): (f64, f64)) -> Result<Interval, CliError> {
    if a > 0.0 && a < b {
        Ok(Interval::new(a, b)?)
    } else {
        Err(usage(format!("{what} must satisfy 0 < a < b, got {a}:{b}")))
    }
}

fn params(cfg: &RunConfig, seed: u64, tol: f64) -> HarmonicParams {
    let d = HarmonicParams::default();
    HarmonicParams {
        m: cfg.m.unwrap_or(d.m),
        alpha: cfg.alpha.unwrap_or(d.alpha),
        tol,
        samples: cfg.samples.unwrap_or(d.samples),
        grid_t: cfg.grid_t.unwrap_or(d.grid_t),
        trials: cfg.trials.unwrap_or(d.trials),
        seed,
        execution: Execution::default(),
    }
}

fn record_inputs(cfg: &RunConfig, p: &HarmonicParams, shown: u8, report: &mut Report) {
    for (key, v) in [
        ("f", &cfg.f),
        ("f1", &cfg.f1),
        ("f2", &cfg.f2),
        ("g1", &cfg.g1),
        ("g2", &cfg.g2),
    ] {
        if let Some(v) = v {
            report.input(key, v.as_str());
        }
    }
    for (key, v) in [
        ("domain", cfg.domain),
        ("set", cfg.set),
        ("set_a", cfg.set_a),
        ("set_b", cfg.set_b),
        ("fn_domain", cfg.fn_domain),
    ] {
        if let Some(v) = v {
            report.input(key, pair(v));
        }
    }
    if let Some(op) = cfg.op {
        report.input("op", op.as_str());
    }
    if let Some(l) = cfg.lambda {
        report.input("lambda", l);
    }
    let numeric: [(u8, &'static str, serde_json::Value); 6] = [
        (P_M, "m", p.m.into()),
        (P_ALPHA, "alpha", p.alpha.into()),
        (P_TOL, "tol", p.tol.into()),
        (P_SAMPLES, "samples", p.samples.into()),
        (P_GRID, "grid_t", p.grid_t.into()),
        (P_TRIALS, "trials", p.trials.into()),
    ];
    for (bit, key, v) in numeric {
        if shown & bit != 0 {
            report.input(key, v);
        }
    }
}

fn verdict_code(r: &ConvexityReport) -> i32 {
    match r.verdict {
        Verdict::CertifiedOnSamples => 0,
        Verdict::Falsified => 1,
    }
}

fn interval_fn(f1: &str, f2: &str, domain: Interval, tol: f64) -> Result<IntervalFn, CliError> {
    Ok(IntervalFn::from_endpoints(
        Expr::parse(f1)?,
        Expr::parse(f2)?,
        domain,
        DEFAULT_VALIDATION_SAMPLES,
        tol,
    )?)
}

/// Runs the configured command, filling `report`, and returns the exit code
/// for a completed run.
pub(crate) fn execute(cfg: &RunConfig, seed: u64, report: &mut Report) -> Result<i32, CliError> {
    let command = cfg
        .command
        .ok_or_else(|| usage("no command given (pass one or set command= in --config)"))?;
    if let Some(field) = cfg.missing_field(command) {
        return Err(usage(format!(
            "--{} is required for {}",
            field.replace('_', "-"),
            command.as_str()
        )));
    }
    let default_tol = match command {
        CommandName::Integrate => DEFAULT_QUAD_TOL,
        _ => DEFAULT_TOL,
    };
    let p = params(cfg, seed, cfg.tol.unwrap_or(default_tol));
    let shown = match command {
        CommandName::CheckFn => P_ALL | P_ALPHA,
        CommandName::CheckSvf | CommandName::CheckSet | CommandName::Ops => P_ALL,
        CommandName::Starshaped => P_TOL | P_GRID | P_TRIALS,
        CommandName::Integrate => P_TOL,
        CommandName::Hh | CommandName::HhScalar => P_M | P_TOL,
    };
    record_inputs(cfg, &p, shown, report);
    let domain = || {
        cfg.domain
            .map(|d| positive_interval("domain", d))
            .transpose()
    };

    match command {
        CommandName::CheckFn => {
            let f = Expr::parse(text(&cfg.f, "f")?)?;
            let r = check_scalar(&f, domain()?.expect("checked"), &p)?;
            report.convexity(&r);
            Ok(verdict_code(&r))
        }
        CommandName::CheckSvf => {
            let f = interval_fn(
                text(&cfg.f1, "f1")?,
                text(&cfg.f2, "f2")?,
                domain()?.expect("checked"),
                p.tol,
            )?;
            let r = match (cfg.set_a, cfg.set_b) {
                (None, None) => check_svf(&f, &p)?,
                (Some(a), Some(b)) => check_svf_setwise(
                    &f,
                    positive_interval("set-a", a)?,
                    positive_interval("set-b", b)?,
                    &p,
                )?,
                _ => return Err(usage("--set-a and --set-b must be given together")),
            };
            report.convexity(&r);
            Ok(verdict_code(&r))
        }
        CommandName::CheckSet | CommandName::Starshaped => {
            let (lo, hi) = cfg.set.or(cfg.domain).expect("checked");
            let set = Interval::new(lo, hi)?;
            let r = if command == CommandName::CheckSet {
                is_m_convex_set(set, p.m, &p)?
            } else {
                is_starshaped(set, &p)?
            };
            report.convexity(&r);
            Ok(verdict_code(&r))
        }
        CommandName::Integrate => {
            let dom = domain()?.expect("checked");
            let f1 = cfg.f1.as_deref().or(cfg.f.as_deref()).expect("checked");
            let f2 = cfg.f2.as_deref().or(cfg.f.as_deref()).expect("checked");
            let f = interval_fn(f1, f2, dom, DEFAULT_TOL)?;
            let r = aumann_mean_detailed(&f, dom.lo(), dom.hi(), p.tol, Execution::default())?;
            report.value = Some(json!({
                "mean": interval(r.value),
                "abs_error_estimate": r.abs_error_estimate,
                "evaluations": r.evaluations,
            }));
            Ok(0)
        }
        CommandName::Hh => {
            let (a, b) = cfg.domain.expect("checked");
            positive_interval("domain", (a, b))?;
            let fn_dom = positive_interval(
                "fn-domain",
                cfg.fn_domain.unwrap_or((a, b / p.m.max(f64::MIN_POSITIVE))),
            )?;
            if cfg.fn_domain.is_none() {
                report.input("fn_domain", interval(fn_dom));
            }
            let f = interval_fn(
                text(&cfg.f1, "f1")?,
                text(&cfg.f2, "f2")?,
                fn_dom,
                DEFAULT_TOL,
            )?;
            let r = check_hh_setvalued(&f, a, b, p.m, p.tol)?;
            report.verdict = Some(r.verdict.as_str());
            report.margins = Some(json!({ "ab": r.margin_ab, "ba": r.margin_ba }));
            report.value = Some(json!({
                "integral_mean": interval(r.integral_mean),
                "integral_error": r.integral_error,
                "half_sum_ab": interval(r.half_sum_ab),
                "half_sum_ba": interval(r.half_sum_ba),
                "min_inf_point": r.min_inf_point,
                "min_inf_member": r.min_inf_member,
                "min_inf_relation": "membership",
            }));
            Ok(match r.verdict {
                HhVerdict::HoldsWithinTol => 0,
                HhVerdict::Violated => 1,
            })
        }
        CommandName::HhScalar => {
            let (a, b) = cfg.domain.expect("checked");
            positive_interval("domain", (a, b))?;
            let f = Expr::parse(text(&cfg.f, "f")?)?;
            let r = check_hh_scalar(&f, a, b, p.m, p.tol)?;
            let verdict = if r.holds {
                HhVerdict::HoldsWithinTol
            } else {
                HhVerdict::Violated
            };
            report.verdict = Some(verdict.as_str());
            report.value = Some(json!({ "lhs": r.lhs, "rhs": r.rhs }));
            report.margins = Some(json!({ "rhs_minus_lhs": r.rhs - r.lhs }));
            Ok(if r.holds { 0 } else { 1 })
        }
        CommandName::Ops => {
            let dom = domain()?.expect("checked");
            let f = interval_fn(text(&cfg.f1, "f1")?, text(&cfg.f2, "f2")?, dom, DEFAULT_TOL)?;
            let g = interval_fn(text(&cfg.g1, "g1")?, text(&cfg.g2, "g2")?, dom, DEFAULT_TOL)?;
            let op = cfg.op.expect("checked");
            let (description, r) = match op {
                Op::Cartesian => {
                    let h = cartesian(&f, &g)?;
                    let d = format!("{} × {}", h.first.describe(), h.second.describe());
                    (d, check_svf(&h, &p)?)
                }
                _ => {
                    let h = match op {
                        Op::Union => union_fn(&f, &g, DEFAULT_VALIDATION_SAMPLES, p.tol)?,
                        Op::Combo => {
                            let lambda = cfg
                                .lambda
                                .ok_or_else(|| usage("--lambda is required for --op combo"))?;
                            linear_combo(lambda, &f, &g)?
                        }
                        _ => product_fn(&f, &g, DEFAULT_VALIDATION_SAMPLES)?,
                    };
                    (h.describe(), check_svf(&h, &p)?)
                }
            };
            report.value = Some(json!({ "result": description }));
            report.convexity(&r);
            Ok(verdict_code(&r))
        }
    }
}
