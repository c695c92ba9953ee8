//! JSON-lines output helpers and the error object written to stderr.

use std::io::Write;
use std::time::Instant;

use serde_json::{json, Map, Value};

/// A usage or environment error; always exit code 2.
#[derive(Debug)]
pub struct Failure {
    kind: &'static str,
    reason: String,
    message: String,
}

impl Failure {
    pub fn usage(reason: impl Into<String>, message: impl Into<String>) -> Failure {
        Failure { kind: "usage", reason: reason.into(), message: message.into() }
    }

    pub fn environment(message: impl Into<String>) -> Failure {
        Failure { kind: "environment", reason: "io".into(), message: message.into() }
    }

    pub fn with_reason(kind: &'static str, reason: impl Into<String>, message: impl Into<String>) -> Failure {
        Failure { kind, reason: reason.into(), message: message.into() }
    }

    pub fn to_json(&self) -> String {
        json!({"type": "error", "kind": self.kind, "reason": self.reason, "message": self.message}).to_string()
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::environment(e.to_string())
    }
}

pub fn line(out: &mut dyn Write, value: &Value) -> Result<(), Failure> {
    writeln!(out, "{value}")?;
    Ok(())
}

/// Trailer object of a stream; wall time is included only on request.
pub struct Summary {
    fields: Map<String, Value>,
    started: Instant,
    timing: bool,
}

impl Summary {
    pub fn new(command: &str, timing: bool) -> Summary {
        let mut fields = Map::new();
        fields.insert("type".into(), "summary".into());
        fields.insert("command".into(), command.into());
        Summary { fields, started: Instant::now(), timing }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.into(), value.into());
    }

    pub fn finish(mut self, out: &mut dyn Write) -> Result<(), Failure> {
        if self.timing {
            self.fields.insert("wall_ms".into(), (self.started.elapsed().as_millis() as u64).into());
        }
        line(out, &Value::Object(self.fields))
    }
}
