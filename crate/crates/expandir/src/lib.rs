//! File formats, experiment sweeps and the `expandir` command line, on top of
//! [`expandir_core`].

pub mod cli;
pub mod docs;
pub mod error;
pub mod pipeline;
pub mod report;
pub mod stopwords;
pub mod sweep;
pub mod topics;
pub mod trec;
pub mod vectors;

pub use error::{Error, Result};
pub use expandir_core as core;
