//! Run reports and their two renderings.

use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported without gating the exit code.
    Info,
    Skip,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Info => "info",
            Status::Skip => "skip",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Output {
    pub key: String,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of the command line and every input consumed.
    pub inputs_digest: String,
    pub outputs: Vec<Output>,
    pub verdicts: Vec<Check>,
    pub timing_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Records,
}

impl RunReport {
    pub fn failed(&self) -> bool {
        self.verdicts.iter().any(|c| c.status == Status::Fail)
    }

    pub fn exit_code(&self) -> u8 {
        u8::from(self.failed())
    }

    pub fn output(&self, key: &str) -> Option<&Value> {
        self.outputs.iter().find(|o| o.key == key).map(|o| &o.value)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Records => self.render_records(),
        }
    }

    /// Outputs as `key: value` (multi-line strings as indented blocks), then
    /// one line per verdict. Timing is left out.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for o in &self.outputs {
            match &o.value {
                Value::String(v) if v.contains('\n') => {
                    s.push_str(&format!("{}:\n", o.key));
                    for line in v.lines() {
                        s.push_str(&format!("  {line}\n"));
                    }
                }
                Value::String(v) => s.push_str(&format!("{}: {v}\n", o.key)),
                v => s.push_str(&format!("{}: {v}\n", o.key)),
            }
        }
        for c in &self.verdicts {
            s.push_str(&format!(
                "[{}] {}: {}\n",
                c.status.label(),
                c.name,
                c.detail
            ));
        }
        s
    }

    /// One JSON object per line: outputs, verdicts, then a summary record
    /// carrying the timing.
    pub fn render_records(&self) -> String {
        let mut lines = Vec::new();
        for o in &self.outputs {
            lines.push(json!({"record": "output", "key": o.key, "value": o.value}));
        }
        for c in &self.verdicts {
            lines.push(json!({"record": "verdict", "name": c.name, "status": c.status, "detail": c.detail}));
        }
        lines.push(json!({
            "record": "report",
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "failed": self.failed(),
            "timing_ms": self.timing_ms,
        }));
        lines.iter().map(|l| l.to_string() + "\n").collect()
    }
}

/// Accumulates a report while a command runs.
pub struct ReportBuilder {
    command: String,
    hasher: Sha256,
    outputs: Vec<Output>,
    verdicts: Vec<Check>,
}

impl ReportBuilder {
    pub fn new(command: impl Into<String>) -> Self {
        let command = command.into();
        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        Self {
            command,
            hasher,
            outputs: Vec::new(),
            verdicts: Vec::new(),
        }
    }

    /// Feeds an input into the digest.
    pub fn input(&mut self, bytes: &[u8]) {
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    pub fn out(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.outputs.push(Output {
            key: key.into(),
            value: value.into(),
        });
    }

    pub fn check(&mut self, name: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.verdicts.push(Check {
            name: name.into(),
            status,
            detail: detail.into(),
        });
    }

    /// Pass when `ok`, otherwise fail.
    pub fn require(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.check(name, if ok { Status::Pass } else { Status::Fail }, detail);
    }

    pub fn finish(self, elapsed: Duration) -> RunReport {
        RunReport {
            command: self.command,
            inputs_digest: hex::encode(self.hasher.finalize()),
            outputs: self.outputs,
            verdicts: self.verdicts,
            timing_ms: elapsed.as_secs_f64() * 1e3,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunReport {
        let mut b = ReportBuilder::new("demo");
        b.input(b"1 2\n2 1\n");
        b.out("count", 3);
        b.out("square", "0 1\n1 0\n");
        b.require("ok", true, "fine");
        b.finish(Duration::from_millis(5))
    }

    #[test]
    fn digest_depends_on_inputs() {
        let a = sample();
        let mut b = ReportBuilder::new("demo");
        b.input(b"1 2\n2 2\n");
        assert_ne!(a.inputs_digest, b.finish(Duration::ZERO).inputs_digest);
        assert_eq!(a.inputs_digest, sample().inputs_digest);
    }

    #[test]
    fn renderings() {
        let r = sample();
        assert_eq!(
            r.render_text(),
            "count: 3\nsquare:\n  0 1\n  1 0\n[pass] ok: fine\n"
        );
        let records: Vec<Value> = r
            .render_records()
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(records.len(), 4);
        assert_eq!(records[3]["record"], "report");
        assert_eq!(r.exit_code(), 0);
    }
}
