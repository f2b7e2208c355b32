//! `expandir` command line.
//!
//! Exit status: 0 on success, 1 on a usage error, 2 when an input cannot be
//! read or parsed. Diagnostics go to stderr; stdout only carries results.
//! Verbosity follows `EXPANDIR_LOG` (`error`, `warn`, `info`, `debug`).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use expandir_core::{
    evaluate, expand_topic, paired_ttest, Bm25Params, CorpusVariant, EmbeddingSpace, ExpansionConfig, ExpansionMode,
    InvertedIndex, Metric, PreprocessConfig, QueryFields,
};

use crate::docs::{load_documents, DocFormat};
use crate::error::{Error, Result};
use crate::pipeline::{self, PreprocessSpec, StemChoice};
use crate::report::{metrics_csv, metrics_table};
use crate::sweep::{run_sweep, write_results, SweepInputs, SweepOptions, SweepSpec};
use crate::topics::load_topics;
use crate::trec::{load_qrels, load_queries, load_run, write_query_line, write_run, RunOrder};
use crate::vectors::VectorFormat;

#[derive(Debug, Parser)]
#[command(
    name = "expandir",
    version,
    about = "Embedding-based query expansion over BM25",
    arg_required_else_help = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an index from a document collection.
    Index(IndexArgs),
    /// Retrieve documents for topics, optionally expanding the queries.
    Search(SearchArgs),
    /// Print expanded queries as JSON lines.
    Expand(ExpandArgs),
    /// Score a run against qrels.
    Evaluate(EvaluateArgs),
    /// Run an experiment grid described by a JSON file.
    Sweep(SweepArgs),
    /// Summarize a vector file and show nearest neighbors.
    InspectVectors(InspectArgs),
}

#[derive(Debug, Args)]
pub struct PreprocessArgs {
    /// Stopword list: `builtin` (French), `none` or a file with one word per line.
    #[arg(long, default_value = "builtin")]
    pub stopwords: String,
    #[arg(long, value_enum, default_value_t = StemChoice::French)]
    pub stem: StemChoice,
    /// Keep letter case.
    #[arg(long)]
    pub no_lowercase: bool,
}

impl PreprocessArgs {
    fn spec(&self) -> PreprocessSpec {
        PreprocessSpec {
            stopwords: self.stopwords.clone(),
            stem: self.stem,
            lowercase: !self.no_lowercase,
        }
    }
}

#[derive(Debug, Args)]
pub struct Bm25Args {
    #[arg(long, default_value_t = 1.2)]
    pub k1: f64,
    #[arg(long, default_value_t = 0.75)]
    pub b: f64,
    #[arg(long, default_value_t = 8.0)]
    pub k3: f64,
}

impl Bm25Args {
    fn params(&self) -> Bm25Params {
        Bm25Params {
            k1: self.k1,
            b: self.b,
            k3: self.k3,
            ..Bm25Params::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    #[arg(long)]
    pub docs: PathBuf,
    #[arg(long, value_enum, default_value_t = DocFormat::Jsonl)]
    pub docs_format: DocFormat,
    #[command(flatten)]
    pub preprocess: PreprocessArgs,
    #[command(flatten)]
    pub bm25: Bm25Args,
    /// Where to write the index.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SpaceArgs {
    /// Word vectors used for expansion.
    #[arg(long)]
    pub vectors: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = VectorFormat::Auto)]
    pub vectors_format: VectorFormat,
    /// The vectors were trained on text preprocessed like the index (stopwords
    /// and stemming); otherwise only lowercasing is assumed.
    #[arg(long)]
    pub space_preprocessed: bool,
    /// Training corpus name, for logs.
    #[arg(long, default_value = "space")]
    pub space_name: String,
}

impl SpaceArgs {
    fn load(&self, index_config: &PreprocessConfig) -> Result<Option<EmbeddingSpace>> {
        let Some(path) = &self.vectors else {
            return Ok(None);
        };
        let variant = CorpusVariant::new(self.space_name.clone(), self.space_preprocessed);
        let provenance = pipeline::provenance_for(variant, index_config);
        pipeline::load_space(path, self.vectors_format, provenance).map(Some)
    }
}

fn at_least_one(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        Ok(_) => Err("must be at least 1".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_alpha(s: &str) -> std::result::Result<f64, String> {
    let a: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if a.is_finite() && a >= 0.0 {
        Ok(a)
    } else {
        Err("must be a finite number >= 0".into())
    }
}

#[derive(Debug, Args)]
pub struct ExpansionArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Local)]
    pub mode: ModeArg,
    /// Expansion terms per anchor; 0 disables expansion.
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    /// Weight multiplier of expansion terms; 0 disables expansion.
    #[arg(long, default_value_t = 0.3, value_parser = positive_alpha)]
    pub alpha: f64,
    /// Drop neighbors whose cosine is not above this.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub min_similarity: f64,
    /// Let global expansion pick terms already in the query.
    #[arg(long)]
    pub keep_query_terms: bool,
    /// Multiply local expansion weights by the anchor's query weight.
    #[arg(long)]
    pub scale_by_query_weight: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModeArg {
    Local,
    Global,
}

impl ExpansionArgs {
    fn config(&self) -> ExpansionConfig {
        ExpansionConfig {
            mode: match self.mode {
                ModeArg::Local => ExpansionMode::Local,
                ModeArg::Global => ExpansionMode::Global,
            },
            k: self.k,
            alpha: self.alpha,
            min_similarity: self.min_similarity,
            exclude_query_terms: !self.keep_query_terms,
            scale_by_query_weight: self.scale_by_query_weight,
        }
    }
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Index written by `expandir index`.
    #[arg(long, required = true)]
    pub index: PathBuf,
    #[arg(long, required_unless_present = "queries", conflicts_with = "queries")]
    pub topics: Option<PathBuf>,
    /// Replay queries from `expandir expand` instead of reading topics.
    #[arg(long)]
    pub queries: Option<PathBuf>,
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub expansion: ExpansionArgs,
    /// Append the festival name to topic titles.
    #[arg(long)]
    pub festival: bool,
    /// Documents kept per query.
    #[arg(long, default_value_t = 1000, value_parser = at_least_one)]
    pub depth: usize,
    #[arg(long, default_value = "expandir")]
    pub run_tag: String,
    /// Override the index's BM25 k1.
    #[arg(long)]
    pub k1: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub k3: Option<f64>,
    /// Write the run here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[arg(long)]
    pub topics: PathBuf,
    #[arg(long, required = true)]
    pub vectors: PathBuf,
    #[arg(long, value_enum, default_value_t = VectorFormat::Auto)]
    pub vectors_format: VectorFormat,
    #[arg(long)]
    pub space_preprocessed: bool,
    #[arg(long, default_value = "space")]
    pub space_name: String,
    /// Take the query preprocessing from this index instead of the flags.
    #[arg(long)]
    pub index: Option<PathBuf>,
    #[command(flatten)]
    pub preprocess: PreprocessArgs,
    #[command(flatten)]
    pub expansion: ExpansionArgs,
    #[arg(long)]
    pub festival: bool,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub run: PathBuf,
    #[arg(long)]
    pub qrels: PathBuf,
    /// Paired t-test of every metric against this run.
    #[arg(long)]
    pub baseline: Option<PathBuf>,
    /// Print `query_id,metric,value` CSV instead of a table.
    #[arg(long)]
    pub csv: bool,
    /// Add one column per query to the table.
    #[arg(long)]
    pub per_query: bool,
    #[arg(long, value_enum, default_value_t = RunOrder::Score)]
    pub run_order: RunOrder,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Sweep description (JSON).
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long, default_value = "sweep-results")]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Embedding spaces kept in memory at once.
    #[arg(long, default_value_t = 2, value_parser = at_least_one)]
    pub max_resident_spaces: usize,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    #[arg(long)]
    pub vectors: PathBuf,
    #[arg(long, value_enum, default_value_t = VectorFormat::Auto)]
    pub vectors_format: VectorFormat,
    /// Show the nearest neighbors of these terms.
    #[arg(long = "neighbors", num_args = 1..)]
    pub neighbors: Vec<String>,
    #[arg(long, default_value_t = 10)]
    pub k: usize,
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| Error::io(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn stdout_err(e: io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn cmd_index(args: &IndexArgs) -> Result<()> {
    let docs = load_documents(&args.docs, args.docs_format)?;
    let config = args.preprocess.spec().resolve(Path::new(""))?;
    let index = InvertedIndex::build(&docs, &config, args.bm25.params())?;
    pipeline::save_index(&index, &args.out)?;
    log::info!("indexed {} documents, {} terms", index.num_docs(), index.num_terms());
    Ok(())
}

fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    pool.install(f)
}

fn cmd_search(args: &SearchArgs) -> Result<()> {
    let mut index = pipeline::load_index(&args.index)?;
    let mut params = *index.params();
    params.k1 = args.k1.unwrap_or(params.k1);
    params.b = args.b.unwrap_or(params.b);
    params.k3 = args.k3.unwrap_or(params.k3);
    index.set_params(params)?;
    let queries = match (&args.queries, &args.topics) {
        (Some(q), _) => load_queries(q)?,
        (None, Some(t)) => {
            let topics = load_topics(t)?;
            let fields = QueryFields {
                festival: args.festival,
            };
            match args.space.load(index.preprocess())? {
                Some(space) => with_pool(args.workers, || {
                    pipeline::expanded_queries(&topics, index.preprocess(), fields, &space, &args.expansion.config())
                })?,
                None => pipeline::baseline_queries(&topics, index.preprocess(), fields)?,
            }
        }
        (None, None) => unreachable!("clap requires topics or queries"),
    };
    let run = with_pool(args.workers, || pipeline::run_queries(&index, &queries, args.depth))?;
    let out = output(args.out.as_deref())?;
    write_run(&run, &args.run_tag, out).map_err(|e| match &args.out {
        Some(p) => Error::io(p, e),
        None => stdout_err(e),
    })
}

fn cmd_expand(args: &ExpandArgs) -> Result<()> {
    let config = match &args.index {
        Some(p) => pipeline::load_index(p)?.preprocess().clone(),
        None => args.preprocess.spec().resolve(Path::new(""))?,
    };
    let topics = load_topics(&args.topics)?;
    let variant = CorpusVariant::new(args.space_name.clone(), args.space_preprocessed);
    let space = pipeline::load_space(
        &args.vectors,
        args.vectors_format,
        pipeline::provenance_for(variant, &config),
    )?;
    let cfg = args.expansion.config();
    let fields = QueryFields {
        festival: args.festival,
    };
    let mut out = BufWriter::new(io::stdout().lock());
    for t in &topics {
        match expand_topic(t, &config, fields, &space, &cfg) {
            Ok(e) => write_query_line(&t.id, &e.query, &mut out).map_err(stdout_err)?,
            Err(expandir_core::Error::EmptyQuery) => {
                log::warn!("topic {}: empty query after preprocessing, skipped", t.id)
            }
            Err(e) => return Err(e.into()),
        }
    }
    out.flush().map_err(stdout_err)
}

fn cmd_evaluate(args: &EvaluateArgs) -> Result<()> {
    let qrels = load_qrels(&args.qrels)?;
    let run = load_run(&args.run, args.run_order)?;
    let report = evaluate(&run, &qrels);
    let mut out = BufWriter::new(io::stdout().lock());
    let text = if args.csv {
        metrics_csv(&report)
    } else {
        metrics_table(&report, args.per_query)
    };
    out.write_all(text.as_bytes()).map_err(stdout_err)?;
    if let Some(b) = &args.baseline {
        let base = evaluate(&load_run(b, args.run_order)?, &qrels);
        writeln!(out, "\nmetric  baseline  run  t  p").map_err(stdout_err)?;
        for m in Metric::ALL {
            let line = match paired_ttest(&report.values(m), &base.values(m)) {
                Ok(t) => format!(
                    "{m}  {:.4}  {:.4}  {:.4}  {:.4}",
                    base.mean(m),
                    report.mean(m),
                    t.t,
                    t.p
                ),
                Err(e) => format!("{m}  {:.4}  {:.4}  -  - ({e})", base.mean(m), report.mean(m)),
            };
            writeln!(out, "{line}").map_err(stdout_err)?;
        }
    }
    out.flush().map_err(stdout_err)
}

fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    let spec = SweepSpec::load(&args.config)?;
    let base = args.config.parent().map(Path::to_path_buf).unwrap_or_default();
    let inputs = SweepInputs::load(&spec, &base)?;
    let options = SweepOptions {
        workers: args.workers,
        max_resident_spaces: args.max_resident_spaces,
    };
    let result = run_sweep(&spec, &inputs, options)?;
    write_results(&result, &spec, &base, &args.out_dir)?;
    let errors = result.errors();
    if errors > 0 {
        log::warn!("{errors} of {} cells failed, see cells.csv", result.cells.len());
    }
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "{} cells written to {}",
        result.cells.len(),
        args.out_dir.display()
    )
    .map_err(stdout_err)
}

fn cmd_inspect(args: &InspectArgs) -> Result<()> {
    let space = pipeline::load_space(&args.vectors, args.vectors_format, Default::default())?;
    let mut out = BufWriter::new(io::stdout().lock());
    writeln!(out, "terms {}\ndim {}", space.len(), space.dim()).map_err(stdout_err)?;
    let zero = space.iter().filter(|(_, v)| v.iter().all(|&x| x == 0.0)).count();
    writeln!(out, "zero vectors {zero}").map_err(stdout_err)?;
    let sample: Vec<&str> = space.terms().iter().take(10).map(String::as_str).collect();
    writeln!(out, "first terms {}", sample.join(" ")).map_err(stdout_err)?;
    for term in &args.neighbors {
        match space.vector_f64(term) {
            Some(v) if v.iter().any(|&x| x != 0.0) => {
                let exclude = [term.clone()].into();
                writeln!(out, "\n{term}").map_err(stdout_err)?;
                for n in space.knn(&v, args.k.max(1), &exclude)? {
                    writeln!(out, "  {:.4}  {}", n.similarity, n.term).map_err(stdout_err)?;
                }
            }
            _ => writeln!(out, "\n{term}: not in vocabulary").map_err(stdout_err)?,
        }
    }
    out.flush().map_err(stdout_err)
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Index(a) => cmd_index(a),
        Command::Search(a) => cmd_search(a),
        Command::Expand(a) => cmd_expand(a),
        Command::Evaluate(a) => cmd_evaluate(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::InspectVectors(a) => cmd_inspect(a),
    }
}

pub fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("EXPANDIR_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn is_broken_pipe(e: &Error) -> bool {
    matches!(e, Error::Io { source, .. } if source.kind() == io::ErrorKind::BrokenPipe)
}
