//! Machine-readable command reports. Every number is a decimal string.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Undefined,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    pub verdict: Verdict,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl Report {
    pub fn new(command: &str, inputs: Vec<String>, verdict: Verdict, payload: Value) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            verdict,
            payload,
            diagnostics: Vec::new(),
        }
    }

    pub fn with_diagnostics(mut self, diagnostics: Vec<String>) -> Self {
        self.diagnostics = diagnostics;
        self
    }

    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self)
        } else {
            serde_json::to_string(self)
        }
        .expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Rejects any floating-point number in a JSON value.
pub fn has_float(value: &Value) -> bool {
    match value {
        Value::Number(n) => n.is_f64(),
        Value::Array(items) => items.iter().any(has_float),
        Value::Object(map) => map.values().any(has_float),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip() {
        let r = Report::new(
            "euler",
            vec!["c.json".into()],
            Verdict::Undefined,
            json!({"chi": "undefined"}),
        )
        .with_diagnostics(vec!["pole at -1".into()]);
        for pretty in [false, true] {
            assert_eq!(Report::from_json(&r.to_json(pretty)).unwrap(), r);
        }
    }

    #[test]
    fn verdict_tokens() {
        assert_eq!(serde_json::to_string(&Verdict::Pass).unwrap(), "\"pass\"");
        assert_eq!(serde_json::to_string(&Verdict::Undefined).unwrap(), "\"undefined\"");
    }

    #[test]
    fn float_detection() {
        assert!(has_float(&json!({"a": [1.5]})));
        assert!(!has_float(&json!({"a": ["1/2", 3]})));
    }
}
