//! Query expansion with word embeddings.
//!
//! * Local: every query term `q` present in the space contributes its `k`
//!   nearest neighbors (excluding `q` itself), each weighted
//!   `alpha · cos(t, q)`. A term picked by several query terms accumulates
//!   the weights.
//! * Global: the `k` nearest neighbors of the sum of the query term vectors,
//!   each weighted `alpha · cos(t, Σ q)`; original query terms are excluded.
//!
//! [`fuse_query`] merges an expansion into its query by summing the weights
//! of every term found in either.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::embedding::EmbeddingSpace;
use crate::error::{Error, Result};
use crate::query::WeightedQuery;
use crate::text::{tokenize, topic_to_query, PreprocessConfig, QueryFields, Topic};

/// Fused weights never drop below this, so the result stays a valid query.
pub const MIN_WEIGHT: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum ExpansionMode {
    #[default]
    Local,
    Global,
}

impl ExpansionMode {
    pub fn name(self) -> &'static str {
        match self {
            ExpansionMode::Local => "local",
            ExpansionMode::Global => "global",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct ExpansionConfig {
    pub mode: ExpansionMode,
    /// Neighbors per anchor. 0 disables expansion.
    pub k: usize,
    /// Weight multiplier of expansion terms. 0 disables expansion.
    pub alpha: f64,
    /// Neighbors whose cosine is not strictly above this are dropped.
    pub min_similarity: f64,
    /// Global mode only: keep original query terms out of the neighbor set.
    pub exclude_query_terms: bool,
    /// Local mode only: multiply each neighbor weight by its anchor's query
    /// weight.
    pub scale_by_query_weight: bool,
}

impl Default for ExpansionConfig {
    fn default() -> Self {
        ExpansionConfig {
            mode: ExpansionMode::Local,
            k: 5,
            alpha: 0.3,
            min_similarity: 0.0,
            exclude_query_terms: true,
            scale_by_query_weight: false,
        }
    }
}

impl ExpansionConfig {
    pub fn new(mode: ExpansionMode, k: usize, alpha: f64) -> Self {
        ExpansionConfig {
            mode,
            k,
            alpha,
            ..ExpansionConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.alpha >= 0.0) {
            return Err(Error::InvalidExpansion("alpha must be finite and >= 0"));
        }
        if self.min_similarity.is_nan() {
            return Err(Error::InvalidExpansion("min_similarity must be a number"));
        }
        Ok(())
    }

    fn disabled(&self) -> bool {
        self.k == 0 || self.alpha == 0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    pub mode: ExpansionMode,
    pub k: usize,
    pub alpha: f64,
    /// `(term, weight)` in selection order, one pair per term.
    pub pairs: Vec<(String, f64)>,
    /// Query terms with no usable vector in the space.
    pub oov: Vec<String>,
}

impl Expansion {
    fn empty(cfg: &ExpansionConfig, mode: ExpansionMode) -> Self {
        Expansion {
            mode,
            k: cfg.k,
            alpha: cfg.alpha,
            pairs: Vec::new(),
            oov: Vec::new(),
        }
    }

    fn add(&mut self, term: String, weight: f64) {
        match self.pairs.iter_mut().find(|(t, _)| *t == term) {
            Some((_, w)) => *w += weight,
            None => self.pairs.push((term, weight)),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn weight(&self, term: &str) -> Option<f64> {
        self.pairs.iter().find(|(t, _)| t == term).map(|(_, w)| *w)
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> + '_ {
        self.pairs.iter().map(|(t, _)| t.as_str())
    }
}

fn anchor_vector(space: &EmbeddingSpace, term: &str) -> Option<Vec<f64>> {
    space.vector_f64(term).filter(|v| v.iter().any(|&x| x != 0.0))
}

/// Per-term expansion.
pub fn expand_local(q: &WeightedQuery, space: &EmbeddingSpace, cfg: &ExpansionConfig) -> Result<Expansion> {
    cfg.validate()?;
    let mut out = Expansion::empty(cfg, ExpansionMode::Local);
    for (term, qweight) in q.iter() {
        let Some(anchor) = anchor_vector(space, term) else {
            out.oov.push(String::from(term));
            continue;
        };
        if cfg.disabled() {
            continue;
        }
        let exclude: BTreeSet<String> = [String::from(term)].into();
        for n in space.knn(&anchor, cfg.k, &exclude)? {
            // NaN similarities fail the comparison and are dropped too.
            if n.similarity.partial_cmp(&cfg.min_similarity) != Some(core::cmp::Ordering::Greater) {
                continue;
            }
            let mut w = cfg.alpha * n.similarity;
            if cfg.scale_by_query_weight {
                w *= qweight;
            }
            out.add(n.term, w);
        }
    }
    Ok(out)
}

/// Whole-query expansion around the sum of the query term vectors.
pub fn expand_global(q: &WeightedQuery, space: &EmbeddingSpace, cfg: &ExpansionConfig) -> Result<Expansion> {
    cfg.validate()?;
    let mut out = Expansion::empty(cfg, ExpansionMode::Global);
    let mut centroid = vec![0.0f64; space.dim()];
    let mut anchors = 0usize;
    for term in q.terms() {
        match anchor_vector(space, term) {
            Some(v) => {
                for (c, x) in centroid.iter_mut().zip(v) {
                    *c += x;
                }
                anchors += 1;
            }
            None => out.oov.push(String::from(term)),
        }
    }
    if anchors == 0 || cfg.disabled() || centroid.iter().all(|&x| x == 0.0) {
        return Ok(out);
    }
    let exclude: BTreeSet<String> = if cfg.exclude_query_terms {
        q.terms().map(String::from).collect()
    } else {
        BTreeSet::new()
    };
    for n in space.knn(&centroid, cfg.k, &exclude)? {
        if n.similarity > cfg.min_similarity {
            out.add(n.term, cfg.alpha * n.similarity);
        }
    }
    Ok(out)
}

pub fn expand(q: &WeightedQuery, space: &EmbeddingSpace, cfg: &ExpansionConfig) -> Result<Expansion> {
    match cfg.mode {
        ExpansionMode::Local => expand_local(q, space, cfg),
        ExpansionMode::Global => expand_global(q, space, cfg),
    }
}

/// Union of query and expansion terms; each weight is the sum of the term's
/// weights in both.
pub fn fuse_query(q: &WeightedQuery, e: &Expansion) -> WeightedQuery {
    let mut fused = q.clone();
    for (term, w) in &e.pairs {
        fused.accumulate_floored(term.clone(), *w, MIN_WEIGHT);
    }
    fused
}

pub fn expand_and_fuse(q: &WeightedQuery, space: &EmbeddingSpace, cfg: &ExpansionConfig) -> Result<WeightedQuery> {
    Ok(fuse_query(q, &expand(q, space, cfg)?))
}

/// A topic's final query together with the expansion that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpandedQuery {
    /// Fused query, in index term space.
    pub query: WeightedQuery,
    /// Expansion in index term space.
    pub expansion: Expansion,
}

/// Builds the expanded query of a topic when the space and the index may have
/// been preprocessed differently.
///
/// The title is tokenized once with the space's preprocessing to find the
/// anchors, and once with the index preprocessing for the original query.
/// Expansion terms are then run through the index preprocessing (a no-op when
/// both configurations are equal) before fusion.
pub fn expand_topic(
    topic: &Topic,
    index_config: &PreprocessConfig,
    fields: QueryFields,
    space: &EmbeddingSpace,
    cfg: &ExpansionConfig,
) -> Result<ExpandedQuery> {
    let base = topic_to_query(topic, index_config, fields)?;
    let space_config = &space.provenance().preprocess;
    let raw = match topic_to_query(topic, space_config, fields) {
        Ok(space_query) => expand(&space_query, space, cfg)?,
        Err(Error::EmptyQuery) => Expansion::empty(cfg, cfg.mode),
        Err(e) => return Err(e),
    };
    let expansion = if space_config == index_config {
        raw
    } else {
        let mut mapped = Expansion::empty(cfg, raw.mode);
        mapped.oov = raw.oov;
        for (term, w) in raw.pairs {
            for t in tokenize(&term, index_config) {
                mapped.add(t, w);
            }
        }
        mapped
    };
    Ok(ExpandedQuery {
        query: fuse_query(&base, &expansion),
        expansion,
    })
}
