//! Stable command output: every invocation produces a `CommandResult` with
//! the fixed JSON schema `{command, status, payload, diagnostics}`.

use motivic_core::limit::{Detection, LimitReport};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct CommandResult {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Error,
}

impl CommandResult {
    pub fn ok(command: impl Into<String>, payload: Value) -> Self {
        CommandResult {
            command: command.into(),
            status: Status::Ok,
            payload,
            diagnostics: Vec::new(),
        }
    }

    pub fn error(command: impl Into<String>, message: impl Into<String>) -> Self {
        CommandResult {
            command: command.into(),
            status: Status::Error,
            payload: Value::Null,
            diagnostics: vec![message.into()],
        }
    }

    pub fn with_diagnostic(mut self, note: impl Into<String>) -> Self {
        self.diagnostics.push(note.into());
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Error => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "status": match self.status { Status::Ok => "ok", Status::Error => "error" },
            "payload": self.payload,
            "diagnostics": self.diagnostics,
        })
    }

    /// Human-readable rendering; scalar payloads print bare, structured ones
    /// print their salient lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.status == Status::Error {
            out.push_str("error");
            for d in &self.diagnostics {
                out.push_str(": ");
                out.push_str(d);
            }
            return out;
        }
        render_payload(&self.payload, &mut out);
        for d in &self.diagnostics {
            out.push_str("\nnote: ");
            out.push_str(d);
        }
        out
    }
}

fn render_payload(v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            if let Some(Value::String(s)) = map.get("value") {
                out.push_str(s);
                return;
            }
            if let Some(Value::Array(lines)) = map.get("lines") {
                let mut first = true;
                for line in lines {
                    if !first {
                        out.push('\n');
                    }
                    if let Value::String(s) = line {
                        out.push_str(s);
                    }
                    first = false;
                }
                return;
            }
            out.push_str(&serde_json::to_string_pretty(v).unwrap_or_default());
        }
        Value::String(s) => out.push_str(s),
        other => out.push_str(&other.to_string()),
    }
}

/// Scalar payload: a single canonical encoding with its kind tag.
pub fn scalar(kind: &str, value: impl Into<String>) -> Value {
    json!({ "kind": kind, "value": value.into() })
}

/// Multi-line report payload.
pub fn report(kind: &str, lines: Vec<String>, extra: Value) -> Value {
    let mut obj = json!({ "kind": kind, "lines": lines });
    if let (Value::Object(target), Value::Object(src)) = (&mut obj, extra) {
        for (k, v) in src {
            target.insert(k, v);
        }
    }
    obj
}

pub fn limit_report_payload(kind: &str, r: &LimitReport, extra_lines: Vec<String>) -> Value {
    let mut lines = Vec::new();
    if r.converged {
        lines.push(format!(
            "converged at index {} (detection: {})",
            r.stabilization_index.unwrap_or(0),
            detection_name(r.detection),
        ));
        if let Some(limit) = &r.limit {
            lines.push(format!("limit = {limit}"));
        }
    } else {
        lines.push("did not converge within the scan budget".to_string());
    }
    lines.extend(extra_lines);
    report(
        kind,
        lines,
        json!({
            "converged": r.converged,
            "limit": r.limit.as_ref().map(|l| l.to_string()),
            "stabilization_index": r.stabilization_index,
            "precision": r.precision,
            "window": r.window,
            "detection": detection_name(r.detection),
        }),
    )
}

fn detection_name(d: Option<Detection>) -> &'static str {
    match d {
        Some(Detection::ExactWindow) => "exact-window",
        Some(Detection::GeometricTail) => "geometric-tail",
        None => "none",
    }
}
