//! Run configuration: flags, `key=value` files and the seed environment
//! variable, merged in that order of precedence.

use std::fmt;
use std::path::Path;

use clap::ValueEnum;

/// Environment variable consulted for the seed when neither a flag nor the
/// config file sets one.
pub const SEED_ENV: &str = "HARMONICA_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CommandName {
    /// Scalar harmonically (α, m)-convex check of --f.
    CheckFn,
    /// Set-valued check of [--f1, --f2]; set-wise with --set-a/--set-b.
    CheckSvf,
    /// m-convexity of the interval --set.
    CheckSet,
    /// Starshapedness of the interval --set.
    Starshaped,
    /// Weighted Aumann mean of [--f1, --f2] over --domain.
    Integrate,
    /// Set-valued Hermite–Hadamard check.
    Hh,
    /// Scalar Hermite–Hadamard check.
    HhScalar,
    /// Combine two interval-valued maps and certify the result.
    Ops,
}

impl CommandName {
    pub fn as_str(self) -> &'static str {
        match self {
            CommandName::CheckFn => "check-fn",
            CommandName::CheckSvf => "check-svf",
            CommandName::CheckSet => "check-set",
            CommandName::Starshaped => "starshaped",
            CommandName::Integrate => "integrate",
            CommandName::Hh => "hh",
            CommandName::HhScalar => "hh-scalar",
            CommandName::Ops => "ops",
        }
    }

    /// Whether a config file naming this command must state `m`.
    fn needs_m(self) -> bool {
        matches!(
            self,
            CommandName::CheckFn
                | CommandName::CheckSvf
                | CommandName::CheckSet
                | CommandName::Hh
                | CommandName::HhScalar
        )
    }

    /// Fields that must be present, with `|` separating alternatives.
    fn required(self) -> &'static [&'static str] {
        match self {
            CommandName::CheckFn | CommandName::HhScalar => &["f", "domain"],
            CommandName::CheckSvf | CommandName::Hh => &["f1", "f2", "domain"],
            CommandName::CheckSet | CommandName::Starshaped => &["set|domain"],
            CommandName::Integrate => &["f1|f", "f2|f", "domain"],
            CommandName::Ops => &["op", "f1", "f2", "g1", "g2", "domain"],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    /// Union of two nested maps.
    Union,
    /// `λF + G`.
    Combo,
    /// `F × G`.
    Cartesian,
    /// Pointwise product `F·G`.
    Product,
}

impl Op {
    pub fn as_str(self) -> &'static str {
        match self {
            Op::Union => "union",
            Op::Combo => "combo",
            Op::Cartesian => "cartesian",
            Op::Product => "product",
        }
    }
}

/// A partially specified run. Every field is optional so that flags, files
/// and defaults can be layered.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    pub command: Option<CommandName>,
    pub f: Option<String>,
    pub f1: Option<String>,
    pub f2: Option<String>,
    pub g1: Option<String>,
    pub g2: Option<String>,
    pub domain: Option<(f64, f64)>,
    pub set: Option<(f64, f64)>,
    pub set_a: Option<(f64, f64)>,
    pub set_b: Option<(f64, f64)>,
    pub fn_domain: Option<(f64, f64)>,
    pub m: Option<f64>,
    pub alpha: Option<f64>,
    pub tol: Option<f64>,
    pub lambda: Option<f64>,
    pub samples: Option<usize>,
    pub grid_t: Option<usize>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub op: Option<Op>,
    pub output: Option<OutputFormat>,
    pub out_path: Option<String>,
}

macro_rules! overlay {
    ($base:ident, $top:ident; $($field:ident),*) => {
        $( if $top.$field.is_some() { $base.$field = $top.$field; } )*
    };
}

impl RunConfig {
    /// Fields set in `top` replace those in `self`.
    pub fn overlay(mut self, top: RunConfig) -> RunConfig {
        overlay!(self, top; command, f, f1, f2, g1, g2, domain, set, set_a, set_b, fn_domain,
            m, alpha, tol, lambda, samples, grid_t, trials, seed, op, output, out_path);
        self
    }

    fn has(&self, field: &str) -> bool {
        match field {
            "f" => self.f.is_some(),
            "f1" => self.f1.is_some(),
            "f2" => self.f2.is_some(),
            "g1" => self.g1.is_some(),
            "g2" => self.g2.is_some(),
            "domain" => self.domain.is_some(),
            "set" => self.set.is_some(),
            "op" => self.op.is_some(),
            "m" => self.m.is_some(),
            _ => false,
        }
    }

    /// The first required field of `command` that is missing.
    pub fn missing_field(&self, command: CommandName) -> Option<&'static str> {
        command
            .required()
            .iter()
            .find(|alts| !alts.split('|').any(|f| self.has(f)))
            .map(|alts| alts.split('|').next().unwrap_or(alts))
    }
}

/// A problem in a config file or a flag value.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    /// 1-based line, absent for whole-file problems.
    pub line: Option<usize>,
    pub field: String,
    /// 1-based column of the offending character.
    pub position: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}")?;
            if let Some(col) = self.position {
                write!(f, ", column {col}")?;
            }
            f.write_str(": ")?;
        }
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl std::error::Error for ConfigError {}

/// Why a value failed to parse, with the 0-based offset of the problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ValueError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (at offset {})", self.message, self.offset)
    }
}

/// Parses a finite decimal literal. On failure the offset is the length of
/// the longest prefix that is still a valid number.
pub fn parse_real(s: &str) -> Result<f64, ValueError> {
    let allowed = |c: char| c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E');
    let stop = s.find(|c| !allowed(c)).unwrap_or(s.len());
    if stop == s.len() {
        if let Ok(v) = s.parse::<f64>() {
            if v.is_finite() {
                return Ok(v);
            }
            return Err(ValueError {
                offset: 0,
                message: format!("{s:?} is not finite"),
            });
        }
    }
    let offset = (1..=stop)
        .rev()
        .find(|&k| s[..k].parse::<f64>().is_ok())
        .unwrap_or(0);
    Err(ValueError {
        offset,
        message: format!("malformed number {s:?}"),
    })
}

/// Parses `a:b`.
pub fn parse_pair(s: &str) -> Result<(f64, f64), ValueError> {
    let Some((a, b)) = s.split_once(':') else {
        return Err(ValueError {
            offset: s.len(),
            message: format!("expected a:b, got {s:?}"),
        });
    };
    let a_val = parse_real(a)?;
    let b_val = parse_real(b).map_err(|e| ValueError {
        offset: a.len() + 1 + e.offset,
        ..e
    })?;
    Ok((a_val, b_val))
}

pub fn parse_count(s: &str) -> Result<usize, ValueError> {
    s.parse().map_err(|_| ValueError {
        offset: s.find(|c: char| !c.is_ascii_digit()).unwrap_or(0),
        message: format!("expected a nonnegative integer, got {s:?}"),
    })
}

pub fn parse_seed(s: &str) -> Result<u64, ValueError> {
    s.parse().map_err(|_| ValueError {
        offset: s.find(|c: char| !c.is_ascii_digit()).unwrap_or(0),
        message: format!("expected an unsigned 64-bit integer, got {s:?}"),
    })
}

fn enum_value<T: ValueEnum>(s: &str) -> Result<T, ValueError> {
    T::from_str(s, false).map_err(|_| {
        let names: Vec<String> = T::value_variants()
            .iter()
            .filter_map(|v| v.to_possible_value().map(|p| p.get_name().to_owned()))
            .collect();
        ValueError {
            offset: 0,
            message: format!("unknown value {s:?}, expected one of {}", names.join(", ")),
        }
    })
}

fn strip_quotes(v: &str) -> (&str, usize) {
    for q in ['"', '\''] {
        if v.len() >= 2 && v.starts_with(q) && v.ends_with(q) {
            return (&v[1..v.len() - 1], 1);
        }
    }
    (v, 0)
}

/// Parses config text: one `key = value` per line, `#` starts a comment,
/// values may be quoted. Keys accept `-` or `_`.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split_once('#').map_or(raw, |(c, _)| c);
        if content.trim().is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError {
                line: Some(line_no),
                field: content.trim().to_owned(),
                position: Some(content.len() - content.trim_start().len() + 1),
                message: "expected key=value".into(),
            });
        };
        let field = key.trim().replace('-', "_");
        let lead = value.len() - value.trim_start().len();
        let (value, quote) = strip_quotes(value.trim());
        let value_col = key.len() + 1 + lead + quote + 1;
        let err = |e: ValueError| ConfigError {
            line: Some(line_no),
            field: field.clone(),
            position: Some(value_col + e.offset),
            message: e.message,
        };
        let text = || Some(value.to_owned());
        match field.as_str() {
            "command" => cfg.command = Some(enum_value(value).map_err(err)?),
            "f" => cfg.f = text(),
            "f1" => cfg.f1 = text(),
            "f2" => cfg.f2 = text(),
            "g1" => cfg.g1 = text(),
            "g2" => cfg.g2 = text(),
            "domain" => cfg.domain = Some(parse_pair(value).map_err(err)?),
            "set" => cfg.set = Some(parse_pair(value).map_err(err)?),
            "set_a" => cfg.set_a = Some(parse_pair(value).map_err(err)?),
            "set_b" => cfg.set_b = Some(parse_pair(value).map_err(err)?),
            "fn_domain" => cfg.fn_domain = Some(parse_pair(value).map_err(err)?),
            "m" => cfg.m = Some(parse_real(value).map_err(err)?),
            "alpha" => cfg.alpha = Some(parse_real(value).map_err(err)?),
            "tol" => cfg.tol = Some(parse_real(value).map_err(err)?),
            "lambda" => cfg.lambda = Some(parse_real(value).map_err(err)?),
            "samples" => cfg.samples = Some(parse_count(value).map_err(err)?),
            "grid_t" => cfg.grid_t = Some(parse_count(value).map_err(err)?),
            "trials" => cfg.trials = Some(parse_count(value).map_err(err)?),
            "seed" => cfg.seed = Some(parse_seed(value).map_err(err)?),
            "op" => cfg.op = Some(enum_value(value).map_err(err)?),
            "output" => cfg.output = Some(enum_value(value).map_err(err)?),
            "out" | "out_path" => cfg.out_path = text(),
            _ => {
                return Err(ConfigError {
                    line: Some(line_no),
                    field,
                    position: Some(content.len() - content.trim_start().len() + 1),
                    message: "unknown key".into(),
                })
            }
        }
    }
    if let Some(command) = cfg.command {
        let missing = if command.needs_m() && cfg.m.is_none() {
            Some("m")
        } else {
            cfg.missing_field(command)
        };
        if let Some(field) = missing {
            return Err(ConfigError {
                line: None,
                field: field.into(),
                position: None,
                message: format!("required for command {}", command.as_str()),
            });
        }
    }
    Ok(cfg)
}

/// Reads and parses a config file.
pub fn load_config(path: impl AsRef<Path>) -> Result<RunConfig, ConfigError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError {
        line: None,
        field: "config".into(),
        position: None,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_config(&text)
}
