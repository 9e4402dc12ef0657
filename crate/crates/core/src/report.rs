//! Verification reports: per-check records, the overall verdict and rendering.

use std::fmt::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Fail dominates inconclusive, which dominates pass.
    pub fn combine(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            _ => Verdict::Pass,
        }
    }

    pub fn from_bool(passed: bool) -> Verdict {
        if passed {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// 0 for pass, 1 for fail, 2 for inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub target: String,
    pub verdict: Verdict,
    pub summary: String,
    /// Exact witnesses for failures, in cyclotomic text form.
    pub witnesses: Vec<Value>,
    pub details: Value,
    pub timing_ms: u64,
}

impl CheckRecord {
    pub fn new(check: &str, target: impl Into<String>, verdict: Verdict, summary: impl Into<String>) -> Self {
        CheckRecord {
            check: check.into(),
            target: target.into(),
            verdict,
            summary: summary.into(),
            witnesses: Vec::new(),
            details: Value::Null,
            timing_ms: 0,
        }
    }

    pub fn with_details(mut self, details: impl Serialize) -> Self {
        self.details = serde_json::to_value(details).unwrap_or_else(|e| Value::String(format!("unserializable: {e}")));
        self
    }

    pub fn with_witness(mut self, witness: impl Serialize) -> Self {
        if let Ok(v) = serde_json::to_value(witness) {
            self.witnesses.push(v);
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: String,
    pub config: Value,
    pub checks: Vec<CheckRecord>,
    pub overall: Verdict,
}

impl VerificationReport {
    pub fn new(config: impl Serialize) -> Self {
        VerificationReport {
            version: TOOL_VERSION.to_string(),
            config: serde_json::to_value(config).unwrap_or(Value::Null),
            checks: Vec::new(),
            overall: Verdict::Pass,
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.overall = self.overall.combine(record.verdict);
        self.checks.push(record);
    }

    pub fn exit_code(&self) -> i32 {
        self.overall.exit_code()
    }

    /// Zeroes timings so reports from identical runs compare byte for byte.
    pub fn canonicalize(&mut self) {
        for c in &mut self.checks {
            c.timing_ms = 0;
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!("unknown format {s:?} (expected text or json)"))),
        }
    }
}

pub fn render_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    }
}

fn render_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    let width = report.checks.iter().map(|c| c.check.len() + c.target.len() + 1).max().unwrap_or(0).max(12);
    let _ = writeln!(out, "gpcert {}", report.version);
    for c in &report.checks {
        let label = format!("{}:{}", c.check, c.target);
        let _ = writeln!(out, "{:<12} {label:<width$} {:>7} ms  {}", c.verdict.to_string().to_uppercase(), c.timing_ms, c.summary);
        for w in &c.witnesses {
            let _ = writeln!(out, "{:<12} witness {w}", "");
        }
    }
    let _ = writeln!(out, "overall: {} ({} checks)", report.overall, report.checks.len());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominance() {
        use Verdict::*;
        for (a, b, c) in [(Pass, Pass, Pass), (Pass, Inconclusive, Inconclusive), (Inconclusive, Fail, Fail), (Fail, Pass, Fail)] {
            assert_eq!(a.combine(b), c);
            assert_eq!(b.combine(a), c);
        }
    }

    #[test]
    fn empty_report_passes() {
        let r = VerificationReport::new(serde_json::json!({}));
        assert_eq!(r.overall, Verdict::Pass);
        assert_eq!(r.exit_code(), 0);
        let v: Value = serde_json::from_str(&render_report(&r, Format::Json)).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["checks", "config", "overall", "version"]);
        assert!(render_text(&r).contains("overall: pass (0 checks)"));
    }

    #[test]
    fn failure_keeps_witness_verbatim() {
        let mut r = VerificationReport::new(Value::Null);
        r.push(CheckRecord::new("orbit", "1,2,3", Verdict::Inconclusive, "screen"));
        r.push(CheckRecord::new("freeness", "G", Verdict::Fail, "fixed point").with_witness(["[0, 1]@8", "1"]));
        assert_eq!(r.exit_code(), 1);
        let json = render_report(&r, Format::Json);
        assert!(json.contains("\"[0, 1]@8\""));
        assert!(render_report(&r, Format::Text).contains("witness [\"[0, 1]@8\",\"1\"]"));
    }
}
