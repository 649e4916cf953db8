use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// One checked claim of a scenario.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Inputs {
    /// Ideal in the file format (`vars: N` header plus generators).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Outcome of a named end-to-end run. Contains nothing time- or
/// machine-dependent, so the JSON is byte-identical across runs.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ScenarioResult {
    pub name: String,
    pub inputs: Inputs,
    pub outputs: BTreeMap<String, Value>,
    pub assertions: Vec<Assertion>,
}

impl ScenarioResult {
    pub fn new(name: &str, inputs: Inputs) -> Self {
        Self { name: name.to_string(), inputs, outputs: BTreeMap::new(), assertions: Vec::new() }
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) {
        self.outputs.insert(key.to_string(), value.into());
    }

    pub fn check(&mut self, name: &str, passed: bool) -> bool {
        self.assertions.push(Assertion { name: name.to_string(), passed, detail: None });
        passed
    }

    /// Like [`ScenarioResult::check`], with the observed value recorded next to the verdict.
    pub fn check_detail(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.assertions.push(Assertion { name: name.to_string(), passed, detail: Some(detail.into()) });
        passed
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn failures(&self) -> Vec<&Assertion> {
        self.assertions.iter().filter(|a| !a.passed).collect()
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        v["passed"] = Value::Bool(self.passed());
        v
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("scenario {}\n", self.name);
        if let Some(ideal) = &self.inputs.ideal {
            s.push_str("ideal:\n");
            for line in ideal.lines() {
                let _ = writeln!(s, "  {line}");
            }
        }
        let params: Vec<String> = [
            self.inputs.p.map(|p| format!("p = {p}")),
            self.inputs.d.map(|d| format!("d = {d}")),
            self.inputs.seed.map(|seed| format!("seed = {seed}")),
        ]
        .into_iter()
        .flatten()
        .collect();
        if !params.is_empty() {
            let _ = writeln!(s, "{}", params.join(", "));
        }
        s.push_str("outputs:\n");
        for (k, v) in &self.outputs {
            s.push_str(&render_value(k, v));
        }
        s.push_str("assertions:\n");
        for a in &self.assertions {
            let mark = if a.passed { "pass" } else { "FAIL" };
            match &a.detail {
                Some(d) => {
                    let _ = writeln!(s, "  [{mark}] {} ({d})", a.name);
                }
                None => {
                    let _ = writeln!(s, "  [{mark}] {}", a.name);
                }
            }
        }
        let _ = writeln!(s, "result: {}", if self.passed() { "pass" } else { "FAIL" });
        s
    }
}

/// Strings print raw, string arrays one per line, everything else as compact JSON.
pub(crate) fn render_value(key: &str, v: &Value) -> String {
    match v {
        Value::String(text) if text.contains('\n') => {
            let mut s = format!("  {key}:\n");
            for line in text.lines() {
                let _ = writeln!(s, "    {line}");
            }
            s
        }
        Value::String(text) => format!("  {key}: {text}\n"),
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_string) => {
            let mut s = format!("  {key}:\n");
            for item in items {
                let _ = writeln!(s, "    {}", item.as_str().unwrap());
            }
            s
        }
        other => format!("  {key}: {other}\n"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_and_rendering() {
        let mut r = ScenarioResult::new("demo", Inputs { p: Some(1), d: Some(2), ..Default::default() });
        r.output("dim", 3);
        r.output("forms", vec!["x_0*dx_1".to_string(), "x_1*dx_0".to_string()]);
        assert!(r.check("dim is 3", true));
        assert!(r.passed());
        r.check_detail("impossible", false, "got 4");
        assert!(!r.passed());
        assert_eq!(r.failures().len(), 1);
        let json = r.to_json();
        assert_eq!(json["passed"], Value::Bool(false));
        assert_eq!(json["inputs"], serde_json::json!({"p": 1, "d": 2}));
        let text = r.to_text();
        assert!(text.contains("p = 1, d = 2"));
        assert!(text.contains("    x_1*dx_0\n"));
        assert!(text.contains("[FAIL] impossible (got 4)"));
        assert!(text.ends_with("result: FAIL\n"));
    }
}
