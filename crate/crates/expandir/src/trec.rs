//! TREC run files (`qid Q0 docid rank score tag`), qrels (`qid 0 docid rel`)
//! and the expanded-query JSON-lines format.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use expandir_core::{Qrels, RankedRun, RunEntry, WeightedQuery};

use crate::error::{read_to_string, Error, Result};

pub fn write_run<W: Write>(run: &RankedRun, tag: &str, mut out: W) -> std::io::Result<()> {
    for (qid, entries) in &run.queries {
        for e in entries {
            writeln!(out, "{qid} Q0 {} {} {:.4} {tag}", e.doc_id, e.rank, e.score)?;
        }
    }
    out.flush()
}

/// How a loaded run is ordered within each query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum RunOrder {
    /// Descending score, ties by descending docno, ignoring the rank column.
    /// This is what trec_eval does.
    #[default]
    Score,
    /// Ascending rank column.
    Rank,
}

pub fn load_run(path: impl AsRef<Path>, order: RunOrder) -> Result<RankedRun> {
    let path = path.as_ref();
    parse_run(&read_to_string(path)?, order, path)
}

pub fn parse_run(text: &str, order: RunOrder, origin: &Path) -> Result<RankedRun> {
    let mut grouped: BTreeMap<String, Vec<RunEntry>> = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 6 {
            return Err(Error::parse(
                origin,
                lineno,
                format!("expected 6 columns, found {}", fields.len()),
            ));
        }
        let rank = fields[3]
            .parse()
            .map_err(|_| Error::parse(origin, lineno, format!("bad rank {:?}", fields[3])))?;
        let score: f64 = fields[4]
            .parse()
            .ok()
            .filter(|s: &f64| s.is_finite())
            .ok_or_else(|| Error::parse(origin, lineno, format!("bad score {:?}", fields[4])))?;
        grouped.entry(fields[0].to_string()).or_default().push(RunEntry {
            doc_id: fields[2].to_string(),
            score,
            rank,
        });
    }
    let mut run = RankedRun::new();
    for (qid, mut entries) in grouped {
        match order {
            RunOrder::Score => {
                entries.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| b.doc_id.cmp(&a.doc_id)))
            }
            RunOrder::Rank => entries.sort_by_key(|e| e.rank),
        }
        for (i, e) in entries.iter_mut().enumerate() {
            e.rank = i + 1;
        }
        run.insert(qid, entries);
    }
    Ok(run)
}

pub fn load_qrels(path: impl AsRef<Path>) -> Result<Qrels> {
    let path = path.as_ref();
    parse_qrels(&read_to_string(path)?, path)
}

pub fn parse_qrels(text: &str, origin: &Path) -> Result<Qrels> {
    let mut qrels = Qrels::new();
    for (i, line) in text.lines().enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 4 {
            return Err(Error::parse(
                origin,
                i + 1,
                format!("expected 4 columns, found {}", fields.len()),
            ));
        }
        let rel = fields[3]
            .parse()
            .map_err(|_| Error::parse(origin, i + 1, format!("bad relevance {:?}", fields[3])))?;
        qrels.insert(fields[0], fields[2], rel);
    }
    Ok(qrels)
}

pub fn write_qrels<W: Write>(qrels: &Qrels, mut out: W) -> std::io::Result<()> {
    for qid in qrels.queries() {
        for (doc, rel) in qrels.judgments(qid).into_iter().flatten() {
            writeln!(out, "{qid} 0 {doc} {rel}")?;
        }
    }
    out.flush()
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QueryLine {
    pub qid: String,
    pub terms: Vec<(String, f64)>,
}

impl QueryLine {
    pub fn new(qid: impl Into<String>, query: &WeightedQuery) -> Self {
        QueryLine {
            qid: qid.into(),
            terms: query.iter().map(|(t, w)| (t.to_string(), w)).collect(),
        }
    }
}

pub fn write_query_line<W: Write>(qid: &str, query: &WeightedQuery, mut out: W) -> std::io::Result<()> {
    serde_json::to_writer(&mut out, &QueryLine::new(qid, query))?;
    writeln!(out)
}

/// Reads `{"qid": ..., "terms": [[term, weight], ...]}` lines.
pub fn load_queries(path: impl AsRef<Path>) -> Result<Vec<(String, WeightedQuery)>> {
    let path = path.as_ref();
    parse_queries(&read_to_string(path)?, path)
}

pub fn parse_queries(text: &str, origin: &Path) -> Result<Vec<(String, WeightedQuery)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let q: QueryLine = serde_json::from_str(line).map_err(|e| Error::parse(origin, i + 1, e.to_string()))?;
        let query = WeightedQuery::from_pairs(q.terms).map_err(|e| Error::parse(origin, i + 1, e.to_string()))?;
        out.push((q.qid, query));
    }
    Ok(out)
}
