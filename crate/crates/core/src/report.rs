//! Machine-readable verification reports.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Measured,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Wall-clock time is left out so that reruns are byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub version: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub catalog: Vec<String>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "serde_json::Map::is_empty")]
    pub data: serde_json::Map<String, Value>,
}

impl Report {
    pub fn new(command: Vec<String>, seed: u64) -> Self {
        Self {
            command,
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            catalog: Vec::new(),
            checks: Vec::new(),
            data: serde_json::Map::new(),
        }
    }

    pub fn catalog_id(&mut self, id: impl Into<String>) -> &mut Self {
        self.catalog.push(id.into());
        self
    }

    fn push(&mut self, name: &str, status: Status, value: Value, tolerance: Option<f64>) -> &mut Self {
        debug_assert!(self.checks.iter().all(|c| c.name != name), "duplicate check {name}");
        self.checks.push(Check { name: name.to_string(), status, value, tolerance, detail: None });
        self
    }

    /// Passes iff `value ≤ tolerance` (NaN fails).
    pub fn at_most(&mut self, name: &str, value: f64, tolerance: f64) -> &mut Self {
        let status = if value <= tolerance { Status::Pass } else { Status::Fail };
        self.push(name, status, Value::from(value), Some(tolerance))
    }

    pub fn holds(&mut self, name: &str, ok: bool) -> &mut Self {
        self.push(name, if ok { Status::Pass } else { Status::Fail }, Value::Bool(ok), None)
    }

    pub fn measured(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.push(name, Status::Measured, value.into(), None)
    }

    pub fn skipped(&mut self, name: &str, reason: &str) -> &mut Self {
        self.push(name, Status::Skipped, Value::Null, None);
        self.detail(reason)
    }

    /// Attaches a note to the most recent check.
    pub fn detail(&mut self, text: &str) -> &mut Self {
        if let Some(c) = self.checks.last_mut() {
            c.detail = Some(text.to_string());
        }
        self
    }

    pub fn data(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.data.insert(key.to_string(), value.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_tolerance() {
        let mut r = Report::new(vec!["x".into()], 0);
        r.at_most("small", 1e-9, 1e-8).measured("m", 3.5);
        assert!(r.passed());
        r.at_most("nan", f64::NAN, 1.0);
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert!(r.to_json().contains("\"status\": \"measured\""));
    }
}
