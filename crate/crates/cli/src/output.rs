use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    DomainError,
    ParseError,
}

/// The single document written by each invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandResult {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payload: Option<Value>,
    pub diagnostics: Vec<String>,
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain(String),
}

impl From<howe::Error> for CliError {
    fn from(e: howe::Error) -> Self {
        if e.is_parse() {
            CliError::Parse(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(format!("malformed input document: {e}"))
    }
}

/// What a command hands back on success.
pub struct Output {
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl Output {
    pub fn new(payload: Value) -> Self {
        Output {
            payload,
            diagnostics: Vec::new(),
        }
    }

    pub fn with_diagnostics(mut self, d: Vec<String>) -> Self {
        self.diagnostics = d;
        self
    }
}

impl CommandResult {
    pub fn ok(payload: Value, diagnostics: Vec<String>) -> Self {
        CommandResult {
            status: Status::Ok,
            payload: Some(payload),
            diagnostics,
        }
    }

    pub fn error(e: CliError) -> Self {
        let (status, msg) = match e {
            CliError::Parse(m) => (Status::ParseError, m),
            CliError::Domain(m) => (Status::DomainError, m),
        };
        CommandResult {
            status,
            payload: None,
            diagnostics: vec![msg],
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Ok => 0,
            Status::ParseError => 1,
            Status::DomainError => 2,
        }
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("JSON values always serialize")
    }
}
