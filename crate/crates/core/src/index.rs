//! Inverted index with weighted-query BM25 scoring.
//!
//! The score of document `d` for a query `{(t, w)}` is
//!
//! ```text
//! Σ_t  qtf(w) · idf(t) · tf(t, d)·(k1 + 1) / (tf(t, d) + k1·(1 − b + b·|d|/avgdl))
//! ```
//!
//! with `idf(t) = ln((N − df + 0.5) / (df + 0.5))` and
//! `qtf(w) = (k3 + 1)·w / (k3 + w)`. Both the idf variant and the way query
//! weights enter are configurable.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::math;
use crate::query::WeightedQuery;
use crate::text::{tokenize, Document, PreprocessConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum IdfVariant {
    /// `ln((N − df + 0.5)/(df + 0.5))`, negative values clamped to 0.
    #[default]
    Clamped,
    /// `ln((N − df + 0.5)/(df + 0.5))`, negative values kept.
    Raw,
    /// `ln(1 + (N − df + 0.5)/(df + 0.5))`, always positive.
    Smoothed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum QueryWeighting {
    /// `(k3 + 1)·w/(k3 + w)`.
    #[default]
    Saturated,
    /// The weight multiplies the term score directly.
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Bm25Params {
    pub k1: f64,
    pub b: f64,
    pub k3: f64,
    #[cfg_attr(feature = "serde", serde(default))]
    pub idf: IdfVariant,
    #[cfg_attr(feature = "serde", serde(default))]
    pub query_weighting: QueryWeighting,
}

impl Default for Bm25Params {
    fn default() -> Self {
        Bm25Params {
            k1: 1.2,
            b: 0.75,
            k3: 8.0,
            idf: IdfVariant::Clamped,
            query_weighting: QueryWeighting::Saturated,
        }
    }
}

impl Bm25Params {
    pub fn validate(&self) -> Result<()> {
        if !(self.k1.is_finite() && self.k1 >= 0.0) {
            return Err(Error::InvalidParams("k1 must be finite and >= 0"));
        }
        if !(0.0..=1.0).contains(&self.b) {
            return Err(Error::InvalidParams("b must lie in [0, 1]"));
        }
        if !(self.k3.is_finite() && self.k3 >= 0.0) {
            return Err(Error::InvalidParams("k3 must be finite and >= 0"));
        }
        Ok(())
    }

    pub fn idf(&self, num_docs: usize, df: usize) -> f64 {
        let n = num_docs as f64;
        let df = df as f64;
        let ratio = (n - df + 0.5) / (df + 0.5);
        match self.idf {
            IdfVariant::Clamped => math::ln(ratio).max(0.0),
            IdfVariant::Raw => math::ln(ratio),
            IdfVariant::Smoothed => math::ln(1.0 + ratio),
        }
    }

    pub fn tf_saturation(&self, tf: u32, doc_len: u32, avgdl: f64) -> f64 {
        if tf == 0 {
            return 0.0;
        }
        let tf = f64::from(tf);
        let norm = 1.0 - self.b + self.b * f64::from(doc_len) / avgdl;
        tf * (self.k1 + 1.0) / (tf + self.k1 * norm)
    }

    pub fn query_factor(&self, weight: f64) -> f64 {
        match self.query_weighting {
            QueryWeighting::Saturated => (self.k3 + 1.0) * weight / (self.k3 + weight),
            QueryWeighting::Linear => weight,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Posting {
    pub doc: u32,
    pub tf: u32,
}

/// Immutable after [`InvertedIndex::build`]; share it freely across threads.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InvertedIndex {
    postings: BTreeMap<String, Vec<Posting>>,
    doc_ids: Vec<String>,
    doc_lengths: Vec<u32>,
    #[cfg_attr(feature = "serde", serde(skip))]
    doc_lookup: BTreeMap<String, u32>,
    avgdl: f64,
    params: Bm25Params,
    preprocess: PreprocessConfig,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RunEntry {
    pub doc_id: String,
    pub score: f64,
    /// 1-based.
    pub rank: usize,
}

/// Retrieval output for a set of queries, keyed by query id.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RankedRun {
    pub queries: BTreeMap<String, Vec<RunEntry>>,
}

impl RankedRun {
    pub fn new() -> Self {
        RankedRun::default()
    }

    pub fn insert(&mut self, qid: impl Into<String>, entries: Vec<RunEntry>) {
        self.queries.insert(qid.into(), entries);
    }

    /// Builds a run from `(qid, doc_id, score)` triples, ranking each query's
    /// documents by descending score with ties broken by ascending doc id.
    pub fn from_scores<I, Q, D>(triples: I) -> Self
    where
        I: IntoIterator<Item = (Q, D, f64)>,
        Q: Into<String>,
        D: Into<String>,
    {
        let mut grouped: BTreeMap<String, Vec<(String, f64)>> = BTreeMap::new();
        for (q, d, s) in triples {
            grouped.entry(q.into()).or_default().push((d.into(), s));
        }
        let mut run = RankedRun::new();
        for (qid, mut docs) in grouped {
            docs.sort_by(|a, b| by_score_then_id(a.1, &a.0, b.1, &b.0));
            let entries = docs
                .into_iter()
                .enumerate()
                .map(|(i, (doc_id, score))| RunEntry {
                    doc_id,
                    score,
                    rank: i + 1,
                })
                .collect();
            run.insert(qid, entries);
        }
        run
    }

    pub fn get(&self, qid: &str) -> Option<&[RunEntry]> {
        self.queries.get(qid).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.queries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queries.is_empty()
    }
}

fn by_score_then_id(sa: f64, ida: &str, sb: f64, idb: &str) -> Ordering {
    sb.total_cmp(&sa).then_with(|| ida.cmp(idb))
}

impl InvertedIndex {
    pub fn build(docs: &[Document], config: &PreprocessConfig, params: Bm25Params) -> Result<Self> {
        params.validate()?;
        if docs.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        let mut doc_lookup = BTreeMap::new();
        let mut doc_ids = Vec::with_capacity(docs.len());
        let mut doc_lengths = Vec::with_capacity(docs.len());
        let mut postings: BTreeMap<String, Vec<Posting>> = BTreeMap::new();
        let mut total_len: u64 = 0;

        for (i, doc) in docs.iter().enumerate() {
            let internal = i as u32;
            if doc_lookup.insert(doc.id.clone(), internal).is_some() {
                return Err(Error::DuplicateDocument(doc.id.clone()));
            }
            doc_ids.push(doc.id.clone());

            let tokens = tokenize(&doc.text, config);
            doc_lengths.push(tokens.len() as u32);
            total_len += tokens.len() as u64;

            let mut counts: BTreeMap<String, u32> = BTreeMap::new();
            for t in tokens {
                *counts.entry(t).or_insert(0) += 1;
            }
            for (term, tf) in counts {
                postings.entry(term).or_default().push(Posting { doc: internal, tf });
            }
        }

        Ok(InvertedIndex {
            postings,
            avgdl: total_len as f64 / doc_ids.len() as f64,
            doc_ids,
            doc_lengths,
            doc_lookup,
            params,
            preprocess: config.clone(),
        })
    }

    /// Rebuilds lookup tables that are not serialized.
    pub fn rehydrate(&mut self) -> Result<()> {
        self.doc_lookup.clear();
        for (i, id) in self.doc_ids.iter().enumerate() {
            if self.doc_lookup.insert(id.clone(), i as u32).is_some() {
                return Err(Error::DuplicateDocument(id.clone()));
            }
        }
        Ok(())
    }

    pub fn num_docs(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn avgdl(&self) -> f64 {
        self.avgdl
    }

    pub fn params(&self) -> &Bm25Params {
        &self.params
    }

    /// Replaces the scoring parameters; the postings are unaffected.
    pub fn set_params(&mut self, params: Bm25Params) -> Result<()> {
        params.validate()?;
        self.params = params;
        Ok(())
    }

    pub fn preprocess(&self) -> &PreprocessConfig {
        &self.preprocess
    }

    pub fn df(&self, term: &str) -> usize {
        self.postings.get(term).map_or(0, Vec::len)
    }

    pub fn postings(&self, term: &str) -> Option<&[Posting]> {
        self.postings.get(term).map(Vec::as_slice)
    }

    pub fn num_terms(&self) -> usize {
        self.postings.len()
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    pub fn doc_len(&self, doc_id: &str) -> Option<u32> {
        self.doc_lookup.get(doc_id).map(|&i| self.doc_lengths[i as usize])
    }

    pub fn tf(&self, term: &str, doc_id: &str) -> Result<u32> {
        let internal = self.internal(doc_id)?;
        Ok(self.tf_internal(term, internal))
    }

    fn internal(&self, doc_id: &str) -> Result<u32> {
        self.doc_lookup
            .get(doc_id)
            .copied()
            .ok_or_else(|| Error::UnknownDocument(String::from(doc_id)))
    }

    fn tf_internal(&self, term: &str, doc: u32) -> u32 {
        self.postings
            .get(term)
            .and_then(|p| p.binary_search_by_key(&doc, |x| x.doc).ok().map(|i| p[i].tf))
            .unwrap_or(0)
    }

    /// BM25 contribution of one query term to one document.
    pub fn term_score(&self, term: &str, query_weight: f64, doc_id: &str) -> Result<f64> {
        let doc = self.internal(doc_id)?;
        let tf = self.tf_internal(term, doc);
        if tf == 0 {
            return Ok(0.0);
        }
        Ok(self.score_posting(self.df(term), tf, self.doc_lengths[doc as usize], query_weight))
    }

    fn score_posting(&self, df: usize, tf: u32, doc_len: u32, query_weight: f64) -> f64 {
        let p = &self.params;
        p.query_factor(query_weight) * p.idf(self.num_docs(), df) * p.tf_saturation(tf, doc_len, self.avgdl)
    }

    /// Ranks documents for `query`. Documents scoring exactly 0 are left out,
    /// ties go to the smaller doc id, and at most `top_n` entries come back.
    pub fn search(&self, query: &WeightedQuery, top_n: usize) -> Result<Vec<RunEntry>> {
        if top_n == 0 {
            return Err(Error::ZeroCutoff);
        }
        let mut scores = vec![0.0f64; self.num_docs()];
        let mut touched = vec![false; self.num_docs()];
        let mut hits: Vec<u32> = Vec::new();

        for (term, weight) in query.iter() {
            let Some(list) = self.postings.get(term) else {
                continue;
            };
            for posting in list {
                let d = posting.doc as usize;
                scores[d] += self.score_posting(list.len(), posting.tf, self.doc_lengths[d], weight);
                if !touched[d] {
                    touched[d] = true;
                    hits.push(posting.doc);
                }
            }
        }

        let mut ranked: Vec<(u32, f64)> = hits
            .into_iter()
            .map(|d| (d, scores[d as usize]))
            .filter(|&(_, s)| s != 0.0)
            .collect();
        ranked.sort_by(|a, b| by_score_then_id(a.1, &self.doc_ids[a.0 as usize], b.1, &self.doc_ids[b.0 as usize]));
        ranked.truncate(top_n);
        Ok(ranked
            .into_iter()
            .enumerate()
            .map(|(i, (d, score))| RunEntry {
                doc_id: self.doc_ids[d as usize].clone(),
                score,
                rank: i + 1,
            })
            .collect())
    }
}
