//! Envelope plumbing: input loading, canonical output, exit codes.

use std::io::Read;

use serde_json::Value;
use shimura_core::{Error, Result};

/// Exit code mapping: 0 ok, 2 domain error, 3 resource budget, 4 malformed
/// input (including unknown subcommands).
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 4,
        Error::Resource(_) => 3,
        _ => 2,
    }
}

/// Reads the input document from a file or standard input.
pub fn read_input(path: Option<&str>) -> Result<Value> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Error::parse(format!("cannot read {p}: {e}")))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::parse(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    serde_json::from_str(&text).map_err(|e| Error::parse(format!("invalid JSON input: {e}")))
}

/// Canonical output: serde_json's default map is ordered, so identical
/// documents serialize byte-identically.
pub fn emit(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("serializable value"));
}
