//! Result envelope shared by all subcommands.

use serde::Serialize;
use serde_json::Value;

/// What a subcommand produced: a payload that has already passed its
/// postcondition verifier, plus the verification report itself.
#[derive(Debug, Clone, Serialize)]
pub struct CommandResult {
    pub status: String,
    pub payload: Value,
    pub verification: Value,
}

impl CommandResult {
    pub fn ok(payload: Value, verification: Value) -> Self {
        CommandResult {
            status: "ok".into(),
            payload,
            verification,
        }
    }

    pub fn error(code: &str, message: String) -> Self {
        CommandResult {
            status: "error".into(),
            payload: serde_json::json!({ "code": code, "message": message }),
            verification: Value::Null,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("result serializes")
    }

    /// Human-readable rendering: one `key: value` line per payload
    /// entry, or the bare value for scalar payloads.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.status != "ok" {
            out.push_str(&format!(
                "error: {}\n",
                self.payload
                    .get("message")
                    .and_then(Value::as_str)
                    .unwrap_or("unknown")
            ));
            return out;
        }
        match &self.payload {
            Value::Object(map) => {
                for (k, v) in map {
                    out.push_str(&format!("{k}: {}\n", render(v)));
                }
            }
            v => out.push_str(&format!("{}\n", render(v))),
        }
        out
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items
            .iter()
            .map(render)
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}
