//! Check reports: one JSON object per executed check, with result, witness,
//! dimensions and timing.

use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub result: bool,
    pub witness: Option<Value>,
    pub dims: Map<String, Value>,
    pub elapsed_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, result: bool) -> Self {
        CheckReport {
            check: check.into(),
            result,
            witness: None,
            dims: Map::new(),
            elapsed_ms: 0,
            note: None,
        }
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_dim(mut self, key: impl Into<String>, value: impl Into<Value>) -> Self {
        self.dims.insert(key.into(), value.into());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// One fixed-width human line, used by --pretty output. The boolean is
    /// the property value; expectation mismatches are reported separately.
    pub fn pretty_line(&self) -> String {
        let status = if self.result { "true" } else { "false" };
        let mut line = format!("{:<28} {:>5}  {:>6} ms", self.check, status, self.elapsed_ms);
        if !self.dims.is_empty() {
            let dims: Vec<String> = self.dims.iter().map(|(k, v)| format!("{k}={v}")).collect();
            line.push_str(&format!("  [{}]", dims.join(", ")));
        }
        if let Some(n) = &self.note {
            line.push_str(&format!("  ({n})"));
        }
        line
    }
}

/// Runs a closure, stamping the elapsed time into the produced report.
pub fn timed<F: FnOnce() -> crate::Result<CheckReport>>(f: F) -> crate::Result<CheckReport> {
    let start = Instant::now();
    let mut report = f()?;
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}
