use std::collections::BTreeSet;
use std::path::Path;

use crate::error::{read_to_string, Result};

/// Default French stopword list shipped with the crate.
pub const FRENCH: &str = include_str!("../data/stopwords-fr.txt");

/// One word per line; blank lines and `#` comments are skipped.
pub fn parse_stopwords(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

pub fn french() -> BTreeSet<String> {
    parse_stopwords(FRENCH)
}

pub fn load_stopwords(path: impl AsRef<Path>) -> Result<BTreeSet<String>> {
    Ok(parse_stopwords(&read_to_string(path.as_ref())?))
}
