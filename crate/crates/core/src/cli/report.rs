//! Machine-readable check reports.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Map, Value};

use super::config::ConfigFile;

/// One named check: `{value, tol, pass, aux}`.
///
/// `tol` is a number for one-sided checks and `[lo, hi]` for bands; the
/// `criterion` entry in `aux` spells out which comparison was made.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub value: f64,
    pub tol: Value,
    pub pass: bool,
    pub aux: Map<String, Value>,
}

impl Check {
    fn new(value: f64, tol: Value, pass: bool, criterion: &str) -> Self {
        let mut aux = Map::new();
        aux.insert("criterion".into(), json!(criterion));
        Self {
            value,
            tol,
            pass,
            aux,
        }
    }

    /// Passes when `value <= tol`.
    pub fn at_most(value: f64, tol: f64) -> Self {
        Self::new(value, json!(tol), value <= tol, "value <= tol")
    }

    /// Passes when `value > tol`.
    pub fn above(value: f64, tol: f64) -> Self {
        Self::new(value, json!(tol), value > tol, "value > tol")
    }

    /// Passes when `lo <= value <= hi`.
    pub fn within(value: f64, lo: f64, hi: f64) -> Self {
        Self::new(
            value,
            json!([lo, hi]),
            (lo..=hi).contains(&value),
            "tol[0] <= value <= tol[1]",
        )
    }

    /// Passes when `|value - expected| <= band`.
    pub fn near(value: f64, expected: f64, band: f64) -> Self {
        let mut c = Self::within(value, expected - band, expected + band);
        c.aux.insert("expected".into(), json!(expected));
        c
    }

    /// Passes when `value` is finite.
    pub fn finite(value: f64) -> Self {
        Self::new(value, Value::Null, value.is_finite(), "value finite")
    }

    /// Not applicable in this configuration; always passes.
    pub fn not_applicable(value: f64, reason: &str) -> Self {
        let mut c = Self::new(value, Value::Null, true, "n/a");
        c.aux.insert("status".into(), json!(reason));
        c
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.aux.insert(
            key.to_string(),
            serde_json::to_value(value).unwrap_or(Value::Null),
        );
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub config: ConfigFile,
    pub all_pass: bool,
    pub checks: BTreeMap<String, Check>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(config: ConfigFile) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: config.seed,
            config,
            all_pass: true,
            checks: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, check: Check) {
        self.all_pass &= check.pass;
        self.checks.insert(name.into(), check);
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, c)| !c.pass)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
