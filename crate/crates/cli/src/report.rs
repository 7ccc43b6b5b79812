use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use meyerkit::format::round12;

pub const SCHEMA: &str = "meyerkit/1";

/// Machine-readable outcome of one command.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: String,
    pub inputs: Value,
    pub inputs_digest: String,
    pub verified: bool,
    pub results: Value,
    pub warnings: Vec<String>,
    pub version: &'static str,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value) -> Self {
        let inputs_digest = digest(&inputs);
        RunReport {
            schema: SCHEMA,
            command: command.to_string(),
            inputs,
            inputs_digest,
            verified: true,
            results: Value::Object(Map::new()),
            warnings: Vec::new(),
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    /// Adds a result under `key`; floats are rounded to 12 significant
    /// digits so reports stay byte-stable.
    pub fn insert(&mut self, key: &str, value: impl Serialize) {
        let v = rounded(serde_json::to_value(value).expect("result serializes"));
        if let Value::Object(map) = &mut self.results {
            map.insert(key.to_string(), v);
        }
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    pub fn fail(&mut self) {
        self.verified = false;
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn exit_code(&self) -> i32 {
        if self.verified {
            0
        } else {
            2
        }
    }
}

/// SHA-256 of the compact JSON form of the inputs.
pub fn digest(inputs: &Value) -> String {
    let text = serde_json::to_string(inputs).expect("inputs serialize");
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn rounded(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round12(n.as_f64().expect("f64"));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(rounded).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, rounded(v))).collect()),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn digest_depends_only_on_inputs() {
        let a = RunReport::new("bounds", json!({"K": 2, "m": 2}));
        let b = RunReport::new("bounds", json!({"K": 2, "m": 2}));
        let c = RunReport::new("bounds", json!({"K": 2, "m": 3}));
        assert_eq!(a.inputs_digest, b.inputs_digest);
        assert_ne!(a.inputs_digest, c.inputs_digest);
        assert_eq!(a.inputs_digest.len(), 64);
    }

    #[test]
    fn floats_are_rounded() {
        let mut r = RunReport::new("x", json!({}));
        r.insert("gap", 0.1 + 0.2);
        r.insert("nested", json!({"v": [1.0 / 3.0]}));
        assert_eq!(r.results["gap"], json!(0.3));
        assert_eq!(r.results["nested"]["v"][0], json!(0.333333333333));
    }

    #[test]
    fn exit_codes() {
        let mut r = RunReport::new("x", json!({}));
        assert_eq!(r.exit_code(), 0);
        r.fail();
        assert_eq!(r.exit_code(), 2);
        assert!(r.to_json().contains("\"schema\": \"meyerkit/1\""));
    }
}
