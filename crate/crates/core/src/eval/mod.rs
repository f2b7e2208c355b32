//! Retrieval effectiveness against binary relevance judgments.
//!
//! Conventions follow the usual TREC tooling: a document is relevant when its
//! grade is above zero, P@k divides by `k` even when fewer documents were
//! retrieved, AP divides by the number of relevant documents in the qrels,
//! and only queries with at least one relevant document are scored. A judged
//! query absent from the run scores zero everywhere.

mod ttest;

pub use ttest::{paired_ttest, TTest};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::index::{RankedRun, RunEntry};

/// Graded judgments, `qid -> doc_id -> grade`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Qrels {
    judgments: BTreeMap<String, BTreeMap<String, i32>>,
}

impl Qrels {
    pub fn new() -> Self {
        Qrels::default()
    }

    /// Records a judgment; a later one for the same pair replaces it.
    pub fn insert(&mut self, qid: impl Into<String>, doc_id: impl Into<String>, grade: i32) {
        self.judgments
            .entry(qid.into())
            .or_default()
            .insert(doc_id.into(), grade);
    }

    pub fn grade(&self, qid: &str, doc_id: &str) -> Option<i32> {
        self.judgments.get(qid)?.get(doc_id).copied()
    }

    pub fn is_relevant(&self, qid: &str, doc_id: &str) -> bool {
        self.grade(qid, doc_id).is_some_and(|g| g > 0)
    }

    pub fn num_relevant(&self, qid: &str) -> usize {
        self.judgments
            .get(qid)
            .map_or(0, |docs| docs.values().filter(|&&g| g > 0).count())
    }

    /// Query ids with at least one relevant document, ascending.
    pub fn scored_queries(&self) -> impl Iterator<Item = &str> + '_ {
        self.judgments
            .iter()
            .filter(|(_, docs)| docs.values().any(|&g| g > 0))
            .map(|(q, _)| q.as_str())
    }

    pub fn queries(&self) -> impl Iterator<Item = &str> + '_ {
        self.judgments.keys().map(String::as_str)
    }

    pub fn judgments(&self, qid: &str) -> Option<&BTreeMap<String, i32>> {
        self.judgments.get(qid)
    }

    pub fn len(&self) -> usize {
        self.judgments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.judgments.is_empty()
    }
}

/// Relevance flags of a ranking, top first. Repeated documents count once.
fn relevance_flags(entries: &[RunEntry], qid: &str, qrels: &Qrels) -> Vec<bool> {
    let mut seen = BTreeSet::new();
    entries
        .iter()
        .filter(|e| seen.insert(e.doc_id.as_str()))
        .map(|e| qrels.is_relevant(qid, &e.doc_id))
        .collect()
}

pub fn precision_at(flags: &[bool], k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::ZeroCutoff);
    }
    let hits = flags.iter().take(k).filter(|&&r| r).count();
    Ok(hits as f64 / k as f64)
}

/// Mean of the precision at each relevant rank, over `num_relevant`.
pub fn average_precision(flags: &[bool], num_relevant: usize) -> f64 {
    if num_relevant == 0 {
        return 0.0;
    }
    let mut hits = 0usize;
    let mut sum = 0.0;
    for (i, &r) in flags.iter().enumerate() {
        if r {
            hits += 1;
            sum += hits as f64 / (i + 1) as f64;
        }
    }
    sum / num_relevant as f64
}

pub fn reciprocal_rank(flags: &[bool]) -> f64 {
    flags.iter().position(|&r| r).map_or(0.0, |i| 1.0 / (i + 1) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Metric {
    #[cfg_attr(feature = "serde", serde(rename = "map"))]
    Map,
    #[cfg_attr(feature = "serde", serde(rename = "mrr"))]
    Mrr,
    #[cfg_attr(feature = "serde", serde(rename = "p@5"))]
    P5,
    #[cfg_attr(feature = "serde", serde(rename = "p@10"))]
    P10,
    #[cfg_attr(feature = "serde", serde(rename = "p@30"))]
    P30,
}

impl Metric {
    pub const ALL: [Metric; 5] = [Metric::P5, Metric::P10, Metric::P30, Metric::Map, Metric::Mrr];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Map => "map",
            Metric::Mrr => "mrr",
            Metric::P5 => "p@5",
            Metric::P10 => "p@10",
            Metric::P30 => "p@30",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "map" => Ok(Metric::Map),
            "mrr" | "recip_rank" => Ok(Metric::Mrr),
            "p@5" | "p5" | "p_5" => Ok(Metric::P5),
            "p@10" | "p10" | "p_10" => Ok(Metric::P10),
            "p@30" | "p30" | "p_30" => Ok(Metric::P30),
            _ => Err(Error::InvalidParams("unknown metric")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QueryMetrics {
    pub ap: f64,
    pub rr: f64,
    pub p5: f64,
    pub p10: f64,
    pub p30: f64,
}

impl QueryMetrics {
    pub fn compute(entries: &[RunEntry], qid: &str, qrels: &Qrels) -> Self {
        let flags = relevance_flags(entries, qid, qrels);
        let p = |k| precision_at(&flags, k).expect("non-zero cutoff");
        QueryMetrics {
            ap: average_precision(&flags, qrels.num_relevant(qid)),
            rr: reciprocal_rank(&flags),
            p5: p(5),
            p10: p(10),
            p30: p(30),
        }
    }

    pub fn get(&self, metric: Metric) -> f64 {
        match metric {
            Metric::Map => self.ap,
            Metric::Mrr => self.rr,
            Metric::P5 => self.p5,
            Metric::P10 => self.p10,
            Metric::P30 => self.p30,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MetricsReport {
    pub per_query: BTreeMap<String, QueryMetrics>,
    pub mean: QueryMetrics,
    pub num_queries: usize,
}

impl MetricsReport {
    /// Per-query values of `metric`, in query id order.
    pub fn values(&self, metric: Metric) -> Vec<f64> {
        self.per_query.values().map(|m| m.get(metric)).collect()
    }

    pub fn mean(&self, metric: Metric) -> f64 {
        self.mean.get(metric)
    }
}

/// Scores every judged query that has a relevant document. Run queries
/// without judgments are ignored.
pub fn evaluate(run: &RankedRun, qrels: &Qrels) -> MetricsReport {
    let mut per_query = BTreeMap::new();
    for qid in qrels.scored_queries() {
        let entries = run.get(qid).unwrap_or(&[]);
        per_query.insert(String::from(qid), QueryMetrics::compute(entries, qid, qrels));
    }
    let n = per_query.len();
    let mut mean = QueryMetrics::default();
    if n > 0 {
        for m in per_query.values() {
            mean.ap += m.ap;
            mean.rr += m.rr;
            mean.p5 += m.p5;
            mean.p10 += m.p10;
            mean.p30 += m.p30;
        }
        let n = n as f64;
        mean.ap /= n;
        mean.rr /= n;
        mean.p5 /= n;
        mean.p10 /= n;
        mean.p30 /= n;
    }
    MetricsReport {
        per_query,
        mean,
        num_queries: n,
    }
}

/// Mean reciprocal rank of `run` over the scored queries of `qrels`.
pub fn mrr(run: &RankedRun, qrels: &Qrels) -> f64 {
    evaluate(run, qrels).mean.rr
}
