//! Glue shared by the CLI and the sweep runner.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use expandir_core::{
    expand_topic, topic_to_query, CorpusVariant, EmbeddingSpace, Error as CoreError, ExpansionConfig, InvertedIndex,
    PreprocessConfig, Provenance, QueryFields, RankedRun, Stemmer, Topic, WeightedQuery,
};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::stopwords;
use crate::vectors::{load_vectors, VectorFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum StemChoice {
    None,
    /// Snowball French.
    #[default]
    French,
}

impl From<StemChoice> for Stemmer {
    fn from(s: StemChoice) -> Self {
        match s {
            StemChoice::None => Stemmer::None,
            StemChoice::French => Stemmer::FrenchSnowball,
        }
    }
}

/// Preprocessing as written in configuration: stopwords are `"builtin"`,
/// `"none"` or a file path.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PreprocessSpec {
    pub stopwords: String,
    pub stem: StemChoice,
    pub lowercase: bool,
}

impl Default for PreprocessSpec {
    fn default() -> Self {
        PreprocessSpec {
            stopwords: "builtin".into(),
            stem: StemChoice::French,
            lowercase: true,
        }
    }
}

impl PreprocessSpec {
    /// Lowercasing only.
    pub fn raw() -> Self {
        PreprocessSpec {
            stopwords: "none".into(),
            stem: StemChoice::None,
            lowercase: true,
        }
    }

    /// Stopword file, if one is referenced.
    pub fn stopword_path(&self, base: &Path) -> Option<PathBuf> {
        match self.stopwords.as_str() {
            "builtin" | "none" | "" => None,
            p => Some(base.join(p)),
        }
    }

    pub fn resolve(&self, base: &Path) -> Result<PreprocessConfig> {
        let words: BTreeSet<String> = match self.stopwords.as_str() {
            "builtin" => stopwords::french(),
            "none" | "" => BTreeSet::new(),
            _ => stopwords::load_stopwords(self.stopword_path(base).expect("file stopwords"))?,
        };
        let mut cfg = PreprocessConfig::raw()
            .with_stopwords(words)
            .with_stemmer(self.stem.into());
        cfg.lowercase = self.lowercase;
        Ok(cfg)
    }
}

pub fn save_index(index: &InvertedIndex, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    serde_json::to_writer(&mut out, index).map_err(|e| Error::format(path, e.to_string()))?;
    out.flush().map_err(|e| Error::io(path, e))
}

pub fn load_index(path: impl AsRef<Path>) -> Result<InvertedIndex> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut index: InvertedIndex =
        serde_json::from_reader(BufReader::new(file)).map_err(|e| Error::format(path, format!("not an index: {e}")))?;
    index.rehydrate()?;
    Ok(index)
}

/// Provenance of a space trained on `variant`: a preprocessed variant shares
/// the index preprocessing, a raw one is only lowercased.
pub fn provenance_for(variant: CorpusVariant, index_config: &PreprocessConfig) -> Provenance {
    let preprocess = if variant.preprocessed {
        index_config.clone()
    } else {
        PreprocessConfig::raw()
    };
    Provenance {
        variant,
        preprocess,
        training: None,
    }
}

pub fn load_space(path: &Path, format: VectorFormat, provenance: Provenance) -> Result<EmbeddingSpace> {
    let space = load_vectors(path, format, provenance)?;
    log::info!("{}: {} terms, dim {}", path.display(), space.len(), space.dim());
    Ok(space)
}

/// Unexpanded topic queries. Topics whose title preprocesses to nothing are
/// dropped with a warning.
pub fn baseline_queries(
    topics: &[Topic],
    config: &PreprocessConfig,
    fields: QueryFields,
) -> Result<Vec<(String, WeightedQuery)>> {
    let mut out = Vec::with_capacity(topics.len());
    for t in topics {
        match topic_to_query(t, config, fields) {
            Ok(q) => out.push((t.id.clone(), q)),
            Err(CoreError::EmptyQuery) => log::warn!("topic {}: empty query after preprocessing, skipped", t.id),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

pub fn expanded_queries(
    topics: &[Topic],
    config: &PreprocessConfig,
    fields: QueryFields,
    space: &EmbeddingSpace,
    cfg: &ExpansionConfig,
) -> Result<Vec<(String, WeightedQuery)>> {
    let results: Vec<_> = topics
        .par_iter()
        .map(|t| (t, expand_topic(t, config, fields, space, cfg)))
        .collect();
    let mut out = Vec::with_capacity(topics.len());
    for (t, r) in results {
        match r {
            Ok(e) => {
                if !e.expansion.oov.is_empty() {
                    log::debug!("topic {}: not in the space: {:?}", t.id, e.expansion.oov);
                }
                out.push((t.id.clone(), e.query));
            }
            Err(CoreError::EmptyQuery) => log::warn!("topic {}: empty query after preprocessing, skipped", t.id),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

/// Searches every query, in parallel, keeping `depth` documents each.
pub fn run_queries(index: &InvertedIndex, queries: &[(String, WeightedQuery)], depth: usize) -> Result<RankedRun> {
    let results: Vec<_> = queries
        .par_iter()
        .map(|(qid, q)| index.search(q, depth).map(|r| (qid.clone(), r)))
        .collect::<Result<_, _>>()?;
    let mut run = RankedRun::new();
    for (qid, entries) in results {
        run.insert(qid, entries);
    }
    Ok(run)
}
