//! Command-line front end for `harmonica`.
//!
//! [`run`] takes the argument vector and a sink for the report and returns
//! the process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | certified on samples / inequality holds / value computed |
//! | 1 | falsified / violated |
//! | 2 | usage, parse or config error |
//! | 3 | numeric error (domain, ordering, nesting, non-convergence) |

mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

pub use config::{
    load_config, parse_config, CommandName, ConfigError, Op, OutputFormat, RunConfig, SEED_ENV,
};
pub use report::{Report, TOOL_VERSION};

/// Certify, combine and integrate interval-valued maps under harmonic
/// m-convexity.
#[derive(Debug, Parser)]
#[command(name = "harmonica", version)]
struct Cli {
    /// Command to run; may instead be given as `command=` in --config.
    #[arg(value_enum)]
    command: Option<CommandName>,
    /// Scalar function of x.
    #[arg(long)]
    f: Option<String>,
    /// Lower endpoint of F.
    #[arg(long)]
    f1: Option<String>,
    /// Upper endpoint of F.
    #[arg(long)]
    f2: Option<String>,
    /// Lower endpoint of G (ops).
    #[arg(long)]
    g1: Option<String>,
    /// Upper endpoint of G (ops).
    #[arg(long)]
    g2: Option<String>,
    /// Domain as a:b with 0 < a < b.
    #[arg(long, value_parser = pair)]
    domain: Option<(f64, f64)>,
    /// Interval lo:hi for check-set and starshaped.
    #[arg(long, value_parser = pair)]
    set: Option<(f64, f64)>,
    /// First argument set for the set-wise check-svf.
    #[arg(long, value_parser = pair)]
    set_a: Option<(f64, f64)>,
    /// Second argument set for the set-wise check-svf.
    #[arg(long, value_parser = pair)]
    set_b: Option<(f64, f64)>,
    /// Domain of F for hh; defaults to a:b/m.
    #[arg(long, value_parser = pair)]
    fn_domain: Option<(f64, f64)>,
    /// m in (0, 1]; defaults to 1.
    #[arg(long, value_parser = real, allow_negative_numbers = true)]
    m: Option<f64>,
    /// alpha in [0, 1] for check-fn; defaults to 1.
    #[arg(long, value_parser = real, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Inclusion / inequality tolerance.
    #[arg(long, value_parser = real, allow_negative_numbers = true)]
    tol: Option<f64>,
    /// Scalar λ for `ops --op combo`.
    #[arg(long, value_parser = real, allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// Grid points per spatial axis.
    #[arg(long, value_parser = count)]
    samples: Option<usize>,
    /// Grid points for t.
    #[arg(long, value_parser = count)]
    grid_t: Option<usize>,
    /// Extra seeded random samples.
    #[arg(long, value_parser = count)]
    trials: Option<usize>,
    /// Seed; falls back to the config file, then HARMONICA_SEED, then 0.
    #[arg(long, value_parser = seed)]
    seed: Option<u64>,
    /// Operation for `ops`.
    #[arg(long, value_enum)]
    op: Option<Op>,
    #[arg(long, value_enum)]
    output: Option<OutputFormat>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
    /// key=value file; flags override its values.
    #[arg(long)]
    config: Option<String>,
}

fn pair(s: &str) -> Result<(f64, f64), String> {
    config::parse_pair(s).map_err(|e| e.to_string())
}

fn real(s: &str) -> Result<f64, String> {
    config::parse_real(s).map_err(|e| e.to_string())
}

fn count(s: &str) -> Result<usize, String> {
    config::parse_count(s).map_err(|e| e.to_string())
}

fn seed(s: &str) -> Result<u64, String> {
    config::parse_seed(s).map_err(|e| e.to_string())
}

impl Cli {
    fn into_config(self) -> RunConfig {
        RunConfig {
            command: self.command,
            f: self.f,
            f1: self.f1,
            f2: self.f2,
            g1: self.g1,
            g2: self.g2,
            domain: self.domain,
            set: self.set,
            set_a: self.set_a,
            set_b: self.set_b,
            fn_domain: self.fn_domain,
            m: self.m,
            alpha: self.alpha,
            tol: self.tol,
            lambda: self.lambda,
            samples: self.samples,
            grid_t: self.grid_t,
            trials: self.trials,
            seed: self.seed,
            op: self.op,
            output: self.output,
            out_path: self.out,
        }
    }
}

/// Errors that stop a run before or during execution.
#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Config(ConfigError),
    Core(harmonica::Error),
    Io(std::io::Error),
}

impl From<harmonica::Error> for CliError {
    fn from(e: harmonica::Error) -> Self {
        CliError::Core(e)
    }
}

macro_rules! core_error {
    ($($t:ty),*) => {
        $( impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Core(e.into())
            }
        } )*
    };
}

core_error!(harmonica::IntervalError, harmonica::SyntaxError);

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        use harmonica::Error as E;
        match self {
            CliError::Core(
                E::Domain(_)
                | E::NonConvergence { .. }
                | E::OrderViolation { .. }
                | E::SignChange { .. }
                | E::NestingViolation { .. }
                | E::OutOfDomain { .. },
            ) => 3,
            _ => 2,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            CliError::Usage(msg) => json!({ "kind": "UsageError", "message": msg }),
            CliError::Config(e) => json!({
                "kind": "ConfigError",
                "message": e.to_string(),
                "line": e.line,
                "field": e.field,
                "position": e.position,
            }),
            CliError::Core(e) => json!({ "kind": e.kind(), "message": e.to_string() }),
            CliError::Io(e) => json!({ "kind": "IoError", "message": e.to_string() }),
        }
    }
}

fn resolve_seed(cfg: &RunConfig) -> Result<u64, CliError> {
    if let Some(s) = cfg.seed {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => config::parse_seed(v.trim())
            .map_err(|e| CliError::Usage(format!("{SEED_ENV}: {}", e.message))),
        Err(_) => Ok(0),
    }
}

fn emit(cfg: &RunConfig, report: &Report, stdout: &mut dyn Write) -> Result<(), CliError> {
    let body = match cfg.output.unwrap_or_default() {
        OutputFormat::Json => report::to_json(report),
        OutputFormat::Text => report::to_text(report),
    };
    match &cfg.out_path {
        Some(path) => std::fs::write(path, body).map_err(CliError::Io),
        None => stdout.write_all(body.as_bytes()).map_err(CliError::Io),
    }
}

/// Runs one command. `argv[0]` is the program name. The report goes to
/// `stdout` unless `--out` names a file.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
        Err(e) => {
            let mut report = Report::new(None, 0);
            report.error =
                Some(CliError::Usage(e.render().to_string().trim_end().to_owned()).to_json());
            let _ = stdout.write_all(report::to_json(&report).as_bytes());
            return 2;
        }
    };
    let config_path = cli.config.clone();
    let flags = cli.into_config();
    let merged = match &config_path {
        Some(path) => load_config(path).map(|file| file.overlay(flags.clone())),
        None => Ok(flags.clone()),
    };
    let (cfg, outcome) = match merged {
        Ok(cfg) => {
            let outcome = resolve_seed(&cfg).and_then(|seed| {
                let mut report = Report::new(cfg.command.map(CommandName::as_str), seed);
                match commands::execute(&cfg, seed, &mut report) {
                    Ok(code) => Ok((report, code)),
                    Err(e) => Err((report, e)),
                }
                .or_else(|(mut report, e)| {
                    let code = e.exit_code();
                    report.error = Some(e.to_json());
                    Ok((report, code))
                })
            });
            (cfg, outcome)
        }
        Err(e) => (flags, Err(CliError::Config(e))),
    };
    let (report, code) = outcome.unwrap_or_else(|e| {
        let mut report = Report::new(cfg.command.map(CommandName::as_str), cfg.seed.unwrap_or(0));
        let code = e.exit_code();
        report.error = Some(e.to_json());
        (report, code)
    });
    match emit(&cfg, &report, stdout) {
        Ok(()) => code,
        Err(e) => {
            let _ = writeln!(stdout, "{}", e.to_json());
            2
        }
    }
}
