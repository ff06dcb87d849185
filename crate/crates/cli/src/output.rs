use std::path::Path;

use serde::Serialize;

use crate::error::{CliError, Result};

pub const TOOL_VERSION: &str = concat!("cubicgap ", env!("CARGO_PKG_VERSION"));

/// Everything a command produces: a summary for the terminal and named
/// artifacts for the output directory.
#[derive(Debug, Default)]
pub struct Output {
    pub summary: String,
    pub files: Vec<(String, String)>,
    /// Set when the artifacts record a refutation or failure; they are
    /// still written before the command exits nonzero.
    pub failure: Option<CliError>,
}

impl Output {
    pub fn line(&mut self, s: impl AsRef<str>) {
        self.summary.push_str(s.as_ref());
        self.summary.push('\n');
    }

    pub fn file(&mut self, name: impl Into<String>, contents: String) {
        self.files.push((name.into(), contents));
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.files.iter().find(|(n, _)| n == name).map(|(_, c)| c.as_str())
    }

    pub fn write_to(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        for (name, contents) in &self.files {
            std::fs::write(dir.join(name), contents)?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    tool_version: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    catalog_hash: Option<&'a str>,
    result: &'a T,
}

/// Pretty JSON of `result` tagged with the command, tool version and, when a
/// catalog was involved, its hash.
pub fn envelope<T: Serialize>(command: &str, catalog_hash: Option<&str>, result: &T) -> String {
    let e = Envelope { command, tool_version: TOOL_VERSION, catalog_hash, result };
    let mut s = serde_json::to_string_pretty(&e).expect("serializable");
    s.push('\n');
    s
}

/// Shortest decimal with at most 12 fractional digits.
pub fn fmt12(x: f64) -> String {
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(fmt12(-1.0000000000002), "-1");
        assert_eq!(fmt12(3.0), "3");
        assert_eq!(fmt12(-1e-15), "0");
        assert_eq!(fmt12(2.5615528128088303), "2.561552812809");
    }
}
