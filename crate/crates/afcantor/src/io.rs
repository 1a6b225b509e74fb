//! Deterministic JSON text for every file the crate reads or writes.

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::Result;

/// Pretty JSON with a trailing newline. Field order is declaration order, so
/// equal values give equal bytes.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

/// Parse JSON; syntax and validation errors carry line and column.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_file<T: DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    from_json(&text)
}
