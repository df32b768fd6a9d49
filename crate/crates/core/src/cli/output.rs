//! Reports: deterministic JSON and aligned text.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

use super::config::RunConfig;
use crate::report::CheckSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "json" => Some(Format::Json),
            "text" => Some(Format::Text),
            _ => None,
        }
    }
}

/// The checks produced by one suite.
#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub suite: String,
    pub passed: bool,
    pub checks: CheckSet,
}

impl Section {
    pub fn new(suite: &str, checks: CheckSet) -> Section {
        Section { suite: suite.to_string(), passed: checks.all_passed(), checks }
    }
}

/// The output of one command. Wall-clock time is kept out of the JSON form
/// so that equal configurations give identical bytes.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config_hash: String,
    pub config: RunConfig,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sections: Vec<Section>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn new(command: &str, config: &RunConfig, sections: Vec<Section>, data: Value, elapsed: Duration) -> Report {
        Report {
            command: command.to_string(),
            config_hash: config.content_hash(),
            config: config.clone(),
            passed: sections.iter().all(|s| s.passed),
            sections,
            data,
            elapsed,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command      {}", self.command);
        let _ = writeln!(out, "config hash  {}", self.config_hash);
        let _ = writeln!(out, "elapsed      {:.3}s", self.elapsed.as_secs_f64());
        let _ = writeln!(out, "result       {}", if self.passed { "PASS" } else { "FAIL" });
        for sec in &self.sections {
            let _ = writeln!(out, "\n[{}] {}", sec.suite, if sec.passed { "PASS" } else { "FAIL" });
            let width = sec.checks.records().iter().map(|r| r.name.len()).max().unwrap_or(0);
            for r in sec.checks.records() {
                let _ = writeln!(
                    out,
                    "  {}  {:<width$}  {:>6}  {}",
                    if r.passed { "pass" } else { "FAIL" },
                    r.name,
                    r.instances,
                    r.anchor
                );
                if let Some(w) = &r.witness {
                    let _ = writeln!(out, "        witness: {w}");
                }
            }
        }
        if !self.data.is_null() {
            let _ = writeln!(out);
            render_value(&mut out, &self.data, 0);
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar_text).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

/// Indented key/value rendering of the data payload.
fn render_value(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, x) in map {
                match scalar_text(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k:<width$}  {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_value(out, x, indent + 2);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar_text(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        render_value(out, x, indent + 2);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar_text(other).unwrap_or_default());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_deterministic_and_omits_timing() {
        let cfg = RunConfig::default();
        let mut checks = CheckSet::new();
        checks.check("a", "x", true, String::new);
        let a = Report::new("verify", &cfg, vec![Section::new("series", checks.clone())], Value::Null, Duration::from_millis(5));
        let b = Report::new("verify", &cfg, vec![Section::new("series", checks)], Value::Null, Duration::from_millis(9));
        assert_eq!(a.to_json(), b.to_json());
        assert!(!a.to_json().contains("elapsed"));
        assert!(a.to_text().contains("elapsed"));
    }
}
