//! Deterministic file emission: every CSV starts with a comment header
//! carrying the config hash and seed, every JSON document embeds the same
//! metadata, and nothing time-dependent is ever written.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use avote_core::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub config_hash: String,
    pub seed: u64,
}

#[derive(Debug, Serialize)]
pub struct Document<T: Serialize> {
    pub meta: Meta,
    #[serde(flatten)]
    pub body: T,
}

pub fn csv_header(meta: &Meta, columns: &[&str]) -> String {
    format!(
        "# config_hash={} seed={}\n{}\n",
        meta.config_hash,
        meta.seed,
        columns.join(",")
    )
}

/// Accumulates CSV text; rows are plain `Display` fields joined by commas,
/// so callers must not pass values containing commas or newlines.
pub struct CsvBuilder {
    text: String,
}

impl CsvBuilder {
    pub fn new(meta: &Meta, columns: &[&str]) -> Self {
        Self {
            text: csv_header(meta, columns),
        }
    }

    pub fn row<I: IntoIterator<Item = String>>(&mut self, fields: I) {
        let mut first = true;
        for f in fields {
            debug_assert!(!f.contains(',') && !f.contains('\n'));
            if !first {
                self.text.push(',');
            }
            let _ = write!(self.text, "{f}");
            first = false;
        }
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)
        .map_err(|e| Error::InvalidInput(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, meta: &Meta, body: T) -> Result<PathBuf> {
    let doc = Document {
        meta: meta.clone(),
        body,
    };
    let mut text = serde_json::to_string_pretty(&doc)
        .map_err(|e| Error::InvalidInput(format!("serialization failed: {e}")))?;
    text.push('\n');
    write_file(dir, name, &text)
}

/// Shared float formatting: shortest round-trip representation, so equal
/// numbers always produce equal bytes.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_rows() {
        let meta = Meta {
            config_hash: "abc123".into(),
            seed: 42,
        };
        let mut csv = CsvBuilder::new(&meta, &["a", "b"]);
        csv.row(["1".to_string(), fmt_f64(0.5)]);
        let text = csv.finish();
        assert_eq!(text, "# config_hash=abc123 seed=42\na,b\n1,0.5\n");
    }

    #[test]
    fn json_document_embeds_meta() {
        #[derive(Serialize)]
        struct Body {
            x: u32,
        }
        let dir = tempfile::tempdir().unwrap();
        let meta = Meta {
            config_hash: "ff".into(),
            seed: 1,
        };
        let p = write_json(dir.path(), "t.json", &meta, Body { x: 3 }).unwrap();
        let text = std::fs::read_to_string(p).unwrap();
        assert!(text.contains("\"config_hash\": \"ff\""));
        assert!(text.contains("\"x\": 3"));
    }
}
