//! Document collections in JSON-lines or two-column TSV.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use expandir_core::Document;
use serde_json::Value;

use crate::error::{read_to_string, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DocFormat {
    /// `{"id": "...", "text": "...", ...}` per line; other fields become metadata.
    #[default]
    Jsonl,
    /// `id<TAB>text` per line.
    Tsv,
}

pub fn load_documents(path: impl AsRef<Path>, format: DocFormat) -> Result<Vec<Document>> {
    let path = path.as_ref();
    parse_documents(&read_to_string(path)?, format, path)
}

/// Parses documents from `text`; `origin` only labels errors.
pub fn parse_documents(text: &str, format: DocFormat, origin: &Path) -> Result<Vec<Document>> {
    let mut docs = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() {
            continue;
        }
        let doc = match format {
            DocFormat::Jsonl => parse_json_line(line, lineno, origin)?,
            DocFormat::Tsv => parse_tsv_line(line, lineno, origin)?,
        };
        if doc.id.is_empty() {
            return Err(Error::parse(origin, lineno, "empty document id"));
        }
        if !seen.insert(doc.id.clone()) {
            return Err(Error::DuplicateId {
                path: origin.to_path_buf(),
                line: lineno,
                id: doc.id,
            });
        }
        docs.push(doc);
    }
    Ok(docs)
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Bool(b) => Some(b.to_string()),
        _ => None,
    }
}

fn parse_json_line(line: &str, lineno: usize, origin: &Path) -> Result<Document> {
    let value: Value = serde_json::from_str(line).map_err(|e| Error::parse(origin, lineno, e.to_string()))?;
    let Value::Object(mut obj) = value else {
        return Err(Error::parse(origin, lineno, "expected a JSON object"));
    };
    let id = obj
        .remove("id")
        .as_ref()
        .and_then(scalar)
        .ok_or_else(|| Error::parse(origin, lineno, "missing \"id\""))?;
    let text = match obj.remove("text") {
        Some(Value::String(s)) => s,
        Some(Value::Null) | None => String::new(),
        Some(_) => return Err(Error::parse(origin, lineno, "\"text\" must be a string")),
    };
    let meta: BTreeMap<String, String> = obj
        .iter()
        .filter_map(|(k, v)| scalar(v).map(|s| (k.clone(), s)))
        .collect();
    Ok(Document { id, text, meta })
}

fn parse_tsv_line(line: &str, lineno: usize, origin: &Path) -> Result<Document> {
    let (id, text) = line
        .split_once('\t')
        .ok_or_else(|| Error::parse(origin, lineno, "expected id<TAB>text"))?;
    Ok(Document::new(id, text))
}
