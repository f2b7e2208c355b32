//! Embedding-based query expansion over weighted BM25 retrieval.
//!
//! This crate holds the algorithmic core and is `no_std` (it needs `alloc`):
//!
//! * [`text`] turns raw text into index terms (tokenization, stopwords,
//!   Snowball French stemming) and topics into queries.
//! * [`index`] is an in-memory inverted index scored with BM25 where query
//!   term weights go through the `k3` saturation component.
//! * [`embedding`] stores word vectors and answers exact cosine k-nearest
//!   neighbor queries over the vocabulary.
//! * [`expansion`] builds local (per query term) and global (query centroid)
//!   expansions and fuses them into the original query.
//! * [`eval`] computes P@k, MAP and MRR against binary qrels and runs paired
//!   two-sided t-tests.
//!
//! File formats, the command line and the experiment sweep live in the
//! `expandir` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod embedding;
pub mod error;
pub mod eval;
pub mod expansion;
pub mod index;
pub mod query;
pub mod text;

mod math;

pub use embedding::{cosine, EmbeddingBuilder, EmbeddingSpace, Neighbor, Provenance, TrainingParams};
pub use error::{Error, Result};
pub use eval::{evaluate, paired_ttest, Metric, MetricsReport, Qrels, QueryMetrics, TTest};
pub use expansion::{
    expand, expand_and_fuse, expand_global, expand_local, expand_topic, fuse_query, ExpandedQuery, Expansion,
    ExpansionConfig, ExpansionMode,
};
pub use index::{Bm25Params, IdfVariant, InvertedIndex, QueryWeighting, RankedRun, RunEntry};
pub use query::WeightedQuery;
pub use text::{
    tokenize, topic_to_query, CorpusVariant, Document, PreprocessConfig, QueryFields, Stemmer, TokenPattern, Topic,
};
