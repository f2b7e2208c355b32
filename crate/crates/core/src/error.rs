use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("cannot build an index over an empty corpus")]
    EmptyCorpus,
    #[error("duplicate document id `{0}`")]
    DuplicateDocument(String),
    #[error("unknown document id `{0}`")]
    UnknownDocument(String),
    #[error("query is empty after preprocessing")]
    EmptyQuery,
    #[error("invalid weight {weight} for term `{term}`: weights must be finite and positive")]
    InvalidWeight { term: String, weight: f64 },
    #[error("invalid BM25 parameters: {0}")]
    InvalidParams(&'static str),
    #[error("invalid expansion configuration: {0}")]
    InvalidExpansion(&'static str),
    #[error("vector dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("embedding dimension must be at least 1")]
    ZeroDimension,
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("neighbor count k must be at least 1")]
    ZeroNeighbors,
    #[error("rank cutoff must be at least 1")]
    ZeroCutoff,
    #[error("embedding vocabulary is empty")]
    EmptyVocabulary,
    #[error("paired samples differ in length ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("paired t-test needs at least 2 observations, got {0}")]
    TooFewSamples(usize),
}
