//! Report documents and their JSON / text renderings.

use std::collections::BTreeMap;
use std::io::{self, Write};

use harmonica::{ConvexityReport, Interval, Triple};
use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter};
use serde_json::{json, Value};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Every report carries these keys; the optional ones are omitted when
/// empty.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Option<&'static str>,
    pub inputs: BTreeMap<&'static str, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margins: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Value>,
    pub seed: u64,
    pub tool_version: &'static str,
}

impl Report {
    pub fn new(command: Option<&'static str>, seed: u64) -> Report {
        Report {
            command,
            inputs: BTreeMap::new(),
            verdict: None,
            value: None,
            margins: None,
            counterexample: None,
            details: None,
            error: None,
            seed,
            tool_version: TOOL_VERSION,
        }
    }

    pub fn input(&mut self, key: &'static str, value: impl Into<Value>) {
        self.inputs.insert(key, value.into());
    }

    /// Fills verdict, margins, counterexample and sample counts.
    pub fn convexity(&mut self, r: &ConvexityReport) {
        self.verdict = Some(r.verdict.as_str());
        self.margins = Some(json!({ "worst": r.worst_margin }));
        self.counterexample = r.counterexample.map(triple);
        self.details = Some(json!({
            "samples_checked": r.samples_checked,
            "samples_skipped": r.samples_skipped,
            "coverage_warning": r.coverage_warning,
        }));
    }
}

pub fn interval(i: Interval) -> Value {
    json!([i.lo(), i.hi()])
}

pub fn pair((a, b): (f64, f64)) -> Value {
    json!([a, b])
}

pub fn triple(t: Triple) -> Value {
    json!({ "x": t.x, "y": t.y, "t": t.t })
}

/// Compact JSON with every float written to 17 significant digits.
struct RoundTrip;

impl Formatter for RoundTrip {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }

    fn write_i64<W: ?Sized + Write>(&mut self, w: &mut W, value: i64) -> io::Result<()> {
        CompactFormatter.write_i64(w, value)
    }
}

pub fn to_json(report: &Report) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, RoundTrip);
    report
        .serialize(&mut ser)
        .expect("serializing to memory cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

fn text_value(v: &Value) -> String {
    match v {
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(text_value).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(map) => {
            let parts: Vec<String> = map
                .iter()
                .map(|(k, v)| format!("{k}={}", text_value(v)))
                .collect();
            parts.join(" ")
        }
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn to_text(report: &Report) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        out.push_str(&format!("{k:<15} {v}\n"));
    };
    line("command", report.command.unwrap_or("-").to_owned());
    for (k, v) in &report.inputs {
        line(k, text_value(v));
    }
    if let Some(v) = report.verdict {
        line("verdict", v.to_owned());
    }
    for (k, v) in [
        ("value", &report.value),
        ("margins", &report.margins),
        ("counterexample", &report.counterexample),
        ("details", &report.details),
        ("error", &report.error),
    ] {
        if let Some(v) = v {
            line(k, text_value(v));
        }
    }
    line("seed", report.seed.to_string());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_with_17_digits() {
        let mut r = Report::new(Some("integrate"), 7);
        r.value = Some(json!({ "third": 1.0 / 3.0, "two": 2.0, "inf": f64::INFINITY }));
        let s = to_json(&r);
        assert!(s.contains("\"third\":3.3333333333333331e-1"), "{s}");
        assert!(s.contains("\"two\":2.0000000000000000e0"), "{s}");
        assert!(s.contains("\"inf\":null"), "{s}");
        assert!(s.contains("\"seed\":7"), "{s}");
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["value"]["third"].as_f64(), Some(1.0 / 3.0));
    }

    #[test]
    fn optional_keys_are_omitted() {
        let s = to_json(&Report::new(Some("check-fn"), 0));
        assert!(!s.contains("verdict") && !s.contains("counterexample"));
        assert!(s.starts_with("{\"command\":\"check-fn\",\"inputs\":{}"));
    }
}
