//! JSON envelope shared by the command-line tools.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// A set of computed quantities, each tagged with how it was obtained.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub group: String,
    pub results: BTreeMap<String, Value>,
    pub methods: BTreeMap<String, String>,
    pub elapsed_ms: u64,
    #[serde(skip)]
    started: Option<Instant>,
}

impl AnalysisReport {
    pub fn new(group: impl Into<String>) -> Self {
        AnalysisReport {
            group: group.into(),
            results: BTreeMap::new(),
            methods: BTreeMap::new(),
            elapsed_ms: 0,
            started: Some(Instant::now()),
        }
    }

    /// Records `value` under `key` with its computation method.
    pub fn record<V: Serialize>(&mut self, key: &str, value: V, method: &str) -> &mut Self {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.results.insert(key.to_string(), v);
        self.methods.insert(key.to_string(), method.to_string());
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.results.get(key)
    }

    /// Stops the clock.
    pub fn finish(&mut self) -> &mut Self {
        if let Some(t) = self.started.take() {
            self.elapsed_ms = t.elapsed().as_millis() as u64;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// `key = value  [method]` lines.
    pub fn to_text(&self) -> String {
        let mut out = format!("group: {}\n", self.group);
        for (k, v) in &self.results {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let m = self.methods.get(k).map(String::as_str).unwrap_or("");
            out.push_str(&format!("{k} = {shown}  [{m}]\n"));
        }
        out.push_str(&format!("elapsed: {} ms\n", self.elapsed_ms));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = AnalysisReport::new("pgl2:7/pairs");
        r.record("b", 2, "exact").record("r", 1, "orbit-count");
        r.record("t", BTreeMap::from([(3u32, "10")]), "partition-enumeration");
        r.finish();
        let back = AnalysisReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back.results, r.results);
        assert_eq!(back.methods, r.methods);
        let text = r.to_json();
        assert!(text.find("\"group\"").unwrap() < text.find("\"results\"").unwrap());
        assert!(text.find("\"methods\"").unwrap() < text.find("\"elapsed_ms\"").unwrap());
    }
}
