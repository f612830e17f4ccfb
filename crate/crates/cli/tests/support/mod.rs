//! Running the pinned CLI invocations under `tests/golden`.
//!
//! A case `NAME` is `NAME.args` (a JSON array of arguments), an optional
//! `NAME.stdin`, and the expected standard output `NAME.out`. Commands run
//! inside the golden directory so that `--input` paths are relative.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct Run {
    pub stdout: Vec<u8>,
    pub code: i32,
}

pub fn run(args: &[String], stdin: Option<&[u8]>) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_howe"))
        .args(args)
        .current_dir(golden_dir())
        .env("NO_COLOR", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("the howe binary runs");
    {
        let mut pipe = child.stdin.take().expect("piped stdin");
        if let Some(bytes) = stdin {
            pipe.write_all(bytes).expect("write stdin");
        }
    }
    let out = child.wait_with_output().expect("howe exits");
    Run {
        stdout: out.stdout,
        code: out.status.code().unwrap_or(-1),
    }
}

pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    pub stdin: Option<Vec<u8>>,
    pub expected: Option<Vec<u8>>,
}

pub fn cases() -> Vec<Case> {
    let dir = golden_dir();
    let mut names: Vec<String> = std::fs::read_dir(&dir)
        .expect("golden directory")
        .filter_map(|e| {
            let p = e.ok()?.path();
            (p.extension()? == "args").then(|| p.file_stem()?.to_str().map(String::from))?
        })
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|name| {
            let args_text = std::fs::read_to_string(dir.join(format!("{name}.args"))).expect("args file");
            let args: Vec<String> = serde_json::from_str(&args_text).expect("args are a JSON string array");
            Case {
                stdin: std::fs::read(dir.join(format!("{name}.stdin"))).ok(),
                expected: std::fs::read(dir.join(format!("{name}.out"))).ok(),
                args,
                name,
            }
        })
        .collect()
}

/// Exit code implied by the `status` field of a result document.
pub fn expected_code(stdout: &[u8]) -> i32 {
    let v: serde_json::Value = serde_json::from_slice(stdout).expect("stdout is JSON");
    match v["status"].as_str() {
        Some("ok") => 0,
        Some("parse-error") => 1,
        Some("domain-error") => 2,
        other => panic!("unexpected status {other:?}"),
    }
}
