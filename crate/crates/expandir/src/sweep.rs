//! Grid runs over embedding spaces × expansion mode × k × α.
//!
//! Cells run in a fixed order (spaces as listed, then mode, k and α as
//! listed) and results are gathered in that order whatever the worker count.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use expandir_core::{
    evaluate, paired_ttest, Bm25Params, CorpusVariant, EmbeddingSpace, ExpansionConfig, ExpansionMode, InvertedIndex,
    Metric, MetricsReport, PreprocessConfig, Provenance, Qrels, QueryFields, RankedRun, TTest, Topic,
};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::docs::{load_documents, DocFormat};
use crate::error::{Error, Result};
use crate::pipeline::{self, PreprocessSpec};
use crate::report::{align, csv_field};
use crate::topics::load_topics;
use crate::trec::{load_qrels, write_run};
use crate::vectors::VectorFormat;

/// Significance level of the paired t-test against the baseline.
pub const SIGNIFICANCE: f64 = 0.05;

fn default_modes() -> Vec<ExpansionMode> {
    vec![ExpansionMode::Local, ExpansionMode::Global]
}

fn default_k() -> Vec<usize> {
    (1..=5).collect()
}

fn default_alphas() -> Vec<f64> {
    (1..=9).map(|i| i as f64 / 10.0).collect()
}

fn default_true() -> bool {
    true
}

fn default_depth() -> usize {
    1000
}

fn default_tag() -> String {
    "expandir".into()
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    /// Training corpus name, e.g. `TMF`.
    pub name: String,
    pub path: PathBuf,
    #[serde(default)]
    pub format: VectorFormat,
    /// Whether the training text went through the index preprocessing.
    #[serde(default)]
    pub preprocessed: bool,
    /// Explicit training preprocessing, overriding `preprocessed`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preprocess: Option<PreprocessSpec>,
}

impl SpaceSpec {
    pub fn variant(&self) -> CorpusVariant {
        CorpusVariant::new(self.name.clone(), self.preprocessed)
    }

    pub fn label(&self) -> String {
        self.variant().label()
    }

    /// File-name-safe identifier.
    pub fn slug(&self) -> String {
        let name: String = self
            .name
            .chars()
            .map(|c| {
                if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                    c
                } else {
                    '_'
                }
            })
            .collect();
        format!("{name}-{}", if self.preprocessed { "pre" } else { "raw" })
    }

    fn provenance(&self, index_config: &PreprocessConfig, base: &Path) -> Result<Provenance> {
        let mut p = pipeline::provenance_for(self.variant(), index_config);
        if let Some(spec) = &self.preprocess {
            p.preprocess = spec.resolve(base)?;
        }
        Ok(p)
    }
}

/// Sweep configuration, read from JSON. Relative paths are resolved against
/// the directory of the configuration file.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    /// Documents to index. Ignored when `index` is set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub docs: Option<PathBuf>,
    #[serde(default)]
    pub docs_format: DocFormat,
    /// A saved index (`expandir index`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<PathBuf>,
    pub topics: PathBuf,
    pub qrels: PathBuf,
    #[serde(default)]
    pub preprocess: PreprocessSpec,
    #[serde(default)]
    pub bm25: Bm25Params,
    pub spaces: Vec<SpaceSpec>,
    #[serde(default = "default_modes")]
    pub modes: Vec<ExpansionMode>,
    #[serde(default = "default_k")]
    pub k_values: Vec<usize>,
    #[serde(default = "default_alphas")]
    pub alphas: Vec<f64>,
    /// Include the unexpanded run (and test every cell against it).
    #[serde(default = "default_true")]
    pub baseline: bool,
    #[serde(default = "default_depth")]
    pub depth: usize,
    #[serde(default = "default_tag")]
    pub run_tag: String,
    #[serde(default)]
    pub min_similarity: f64,
    #[serde(default = "default_true")]
    pub exclude_query_terms: bool,
    #[serde(default)]
    pub scale_by_query_weight: bool,
    /// Append the festival name to topic titles.
    #[serde(default)]
    pub festival: bool,
}

impl SweepSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SweepSpec = serde_json::from_str(text).map_err(|e| Error::Config(format!("sweep config: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        SweepSpec::from_json(&crate::error::read_to_string(path)?).map_err(|e| match e {
            Error::Config(msg) => Error::format(path, msg),
            e => e,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Config(m.to_string()));
        if self.spaces.is_empty() || self.modes.is_empty() || self.k_values.is_empty() || self.alphas.is_empty() {
            return fail("spaces, modes, k_values and alphas must be non-empty");
        }
        if self.k_values.contains(&0) {
            return fail("k values must be >= 1");
        }
        if self.alphas.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
            return fail("alphas must be finite and > 0");
        }
        if self.depth == 0 {
            return fail("depth must be >= 1");
        }
        if self.docs.is_none() && self.index.is_none() {
            return fail("one of docs or index is required");
        }
        let mut slugs = std::collections::BTreeSet::new();
        for s in &self.spaces {
            if s.name.is_empty() {
                return fail("space names must be non-empty");
            }
            if !slugs.insert(s.slug()) {
                return Err(Error::Config(format!("space {} listed twice", s.label())));
            }
        }
        self.bm25.validate()?;
        Ok(())
    }

    /// Number of cells, baseline included.
    pub fn num_cells(&self) -> usize {
        self.spaces.len() * self.modes.len() * self.k_values.len() * self.alphas.len() + usize::from(self.baseline)
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(serde_json::to_vec(self).expect("serializable")))
    }

    fn expansion(&self, mode: ExpansionMode, k: usize, alpha: f64) -> ExpansionConfig {
        ExpansionConfig {
            mode,
            k,
            alpha,
            min_similarity: self.min_similarity,
            exclude_query_terms: self.exclude_query_terms,
            scale_by_query_weight: self.scale_by_query_weight,
        }
    }

    fn fields(&self) -> QueryFields {
        QueryFields {
            festival: self.festival,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    /// 0 lets the thread pool decide.
    pub workers: usize,
    pub max_resident_spaces: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            workers: 0,
            max_resident_spaces: 2,
        }
    }
}

/// Loads spaces on first use and keeps at most `capacity` of them, evicting
/// the least recently used.
pub struct SpaceCache {
    capacity: usize,
    slots: Vec<(String, Arc<EmbeddingSpace>)>,
    loads: usize,
}

impl SpaceCache {
    pub fn new(capacity: usize) -> Self {
        SpaceCache {
            capacity: capacity.max(1),
            slots: Vec::new(),
            loads: 0,
        }
    }

    pub fn get_or_load<F>(&mut self, key: &str, load: F) -> Result<Arc<EmbeddingSpace>>
    where
        F: FnOnce() -> Result<EmbeddingSpace>,
    {
        if let Some(i) = self.slots.iter().position(|(k, _)| k == key) {
            let slot = self.slots.remove(i);
            let space = Arc::clone(&slot.1);
            self.slots.push(slot);
            return Ok(space);
        }
        let space = Arc::new(load()?);
        self.loads += 1;
        if self.slots.len() == self.capacity {
            let (evicted, _) = self.slots.remove(0);
            log::info!("evicting space {evicted}");
        }
        self.slots.push((key.to_string(), Arc::clone(&space)));
        Ok(space)
    }

    /// Number of loads performed so far.
    pub fn loads(&self) -> usize {
        self.loads
    }

    pub fn resident(&self) -> usize {
        self.slots.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellOutcome {
    pub run: RankedRun,
    pub report: MetricsReport,
    /// Paired t-test of per-query p@5 against the baseline.
    pub p5_test: Option<TTest>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellKey {
    /// `None` for the baseline.
    pub space: Option<SpaceSpec>,
    pub mode: Option<ExpansionMode>,
    pub k: usize,
    pub alpha: f64,
}

impl CellKey {
    pub fn is_baseline(&self) -> bool {
        self.space.is_none()
    }

    /// Stable identifier, used for run file names.
    pub fn id(&self) -> String {
        match (&self.space, self.mode) {
            (Some(s), Some(m)) => format!("{}.{}.k{}.a{:.2}", s.slug(), m.name(), self.k, self.alpha),
            _ => "baseline".into(),
        }
    }

    pub fn space_label(&self) -> String {
        self.space.as_ref().map_or_else(|| "baseline".into(), SpaceSpec::label)
    }

    pub fn mode_name(&self) -> &'static str {
        self.mode.map_or("none", ExpansionMode::name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub key: CellKey,
    pub outcome: Result<CellOutcome, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// Baseline first when present, then the grid in execution order.
    pub cells: Vec<Cell>,
}

impl SweepResult {
    pub fn baseline(&self) -> Option<&CellOutcome> {
        self.cells
            .iter()
            .find(|c| c.key.is_baseline())
            .and_then(|c| c.outcome.as_ref().ok())
    }

    pub fn cell(&self, space: &str, mode: ExpansionMode, k: usize, alpha: f64) -> Option<&Cell> {
        self.cells.iter().find(|c| {
            c.key
                .space
                .as_ref()
                .is_some_and(|s| s.label() == space || s.name == space)
                && c.key.mode == Some(mode)
                && c.key.k == k
                && same(c.key.alpha, alpha)
        })
    }

    pub fn errors(&self) -> usize {
        self.cells.iter().filter(|c| c.outcome.is_err()).count()
    }
}

fn same(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Loaded inputs of a sweep.
pub struct SweepInputs {
    pub index: InvertedIndex,
    pub topics: Vec<Topic>,
    pub qrels: Qrels,
    /// Directory that relative space paths are resolved against.
    pub base_dir: PathBuf,
}

impl SweepInputs {
    /// Loads topics, qrels and the index (building it from the documents when
    /// no saved index is configured).
    pub fn load(spec: &SweepSpec, base_dir: impl Into<PathBuf>) -> Result<Self> {
        let base_dir = base_dir.into();
        let index = match (&spec.index, &spec.docs) {
            (Some(p), _) => {
                let mut index = pipeline::load_index(base_dir.join(p))?;
                index.set_params(spec.bm25)?;
                index
            }
            (None, Some(d)) => {
                let docs = load_documents(base_dir.join(d), spec.docs_format)?;
                let cfg = spec.preprocess.resolve(&base_dir)?;
                InvertedIndex::build(&docs, &cfg, spec.bm25)?
            }
            (None, None) => return Err(Error::Config("one of docs or index is required".into())),
        };
        Ok(SweepInputs {
            index,
            topics: load_topics(base_dir.join(&spec.topics))?,
            qrels: load_qrels(base_dir.join(&spec.qrels))?,
            base_dir,
        })
    }
}

fn finish(run: RankedRun, qrels: &Qrels, baseline: Option<&MetricsReport>) -> CellOutcome {
    let report = evaluate(&run, qrels);
    let p5_test = baseline.and_then(|b| paired_ttest(&report.values(Metric::P5), &b.values(Metric::P5)).ok());
    CellOutcome { run, report, p5_test }
}

fn baseline_cell(spec: &SweepSpec, inputs: &SweepInputs) -> Result<CellOutcome> {
    let queries = pipeline::baseline_queries(&inputs.topics, inputs.index.preprocess(), spec.fields())?;
    let run = pipeline::run_queries(&inputs.index, &queries, spec.depth)?;
    Ok(finish(run, &inputs.qrels, None))
}

fn expansion_cell(
    spec: &SweepSpec,
    inputs: &SweepInputs,
    space: &EmbeddingSpace,
    cfg: &ExpansionConfig,
    baseline: Option<&MetricsReport>,
) -> Result<CellOutcome> {
    let queries = pipeline::expanded_queries(&inputs.topics, inputs.index.preprocess(), spec.fields(), space, cfg)?;
    let run = pipeline::run_queries(&inputs.index, &queries, spec.depth)?;
    Ok(finish(run, &inputs.qrels, baseline))
}

/// Runs every cell of `spec`. A space that fails to load turns its cells into
/// errors; the remaining cells still run.
pub fn run_sweep(spec: &SweepSpec, inputs: &SweepInputs, options: SweepOptions) -> Result<SweepResult> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    pool.install(|| sweep_in_pool(spec, inputs, options))
}

fn sweep_in_pool(spec: &SweepSpec, inputs: &SweepInputs, options: SweepOptions) -> Result<SweepResult> {
    let mut cells = Vec::with_capacity(spec.num_cells());
    let baseline_report = if spec.baseline {
        let outcome = baseline_cell(spec, inputs).map_err(|e| e.to_string());
        let report = outcome.as_ref().ok().map(|o| o.report.clone());
        cells.push(Cell {
            key: CellKey {
                space: None,
                mode: None,
                k: 0,
                alpha: 0.0,
            },
            outcome,
        });
        report
    } else {
        None
    };

    let index_config = inputs.index.preprocess();
    let mut cache = SpaceCache::new(options.max_resident_spaces);
    for space_spec in &spec.spaces {
        let grid: Vec<(ExpansionMode, usize, f64)> = spec
            .modes
            .iter()
            .flat_map(|&m| {
                spec.k_values
                    .iter()
                    .flat_map(move |&k| spec.alphas.iter().map(move |&a| (m, k, a)))
            })
            .collect();
        let key = |&(mode, k, alpha): &(ExpansionMode, usize, f64)| CellKey {
            space: Some(space_spec.clone()),
            mode: Some(mode),
            k,
            alpha,
        };
        let path = inputs.base_dir.join(&space_spec.path);
        // Same file under two provenances must not share a slot.
        let slot = format!("{}:{}", space_spec.slug(), path.display());
        let loaded = cache.get_or_load(&slot, || {
            let provenance = space_spec.provenance(index_config, &inputs.base_dir)?;
            pipeline::load_space(&path, space_spec.format, provenance)
        });
        let space = match loaded {
            Ok(s) => s,
            Err(e) => {
                log::error!("space {}: {e}", space_spec.label());
                let msg = e.to_string();
                cells.extend(grid.iter().map(|g| Cell {
                    key: key(g),
                    outcome: Err(msg.clone()),
                }));
                continue;
            }
        };
        let done: Vec<Cell> = grid
            .par_iter()
            .map(|g| {
                let cfg = spec.expansion(g.0, g.1, g.2);
                let outcome =
                    expansion_cell(spec, inputs, &space, &cfg, baseline_report.as_ref()).map_err(|e| e.to_string());
                Cell { key: key(g), outcome }
            })
            .collect();
        cells.extend(done);
    }
    Ok(SweepResult { cells })
}

/// How cells are laid out in a rendered table.
#[derive(Debug, Clone, PartialEq)]
pub enum Layout {
    /// Rows are spaces, columns are k, at a fixed mode and α.
    SpacesByK { mode: ExpansionMode, alpha: f64 },
    /// Rows are α values, columns are k, for one space (label or name) and mode.
    AlphasByK { space: String, mode: ExpansionMode },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub title: String,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    /// `None` where the cell failed or is missing.
    pub values: Vec<Vec<Option<f64>>>,
}

fn best_flags<'a>(values: impl Iterator<Item = &'a Option<f64>> + Clone) -> Vec<bool> {
    let best = values.clone().flatten().copied().fold(f64::NEG_INFINITY, f64::max);
    values.map(|v| v.is_some_and(|x| same(x, best))).collect()
}

impl Table {
    /// Cells equal to their row maximum; ties are all flagged.
    pub fn row_best(&self) -> Vec<Vec<bool>> {
        self.values.iter().map(|row| best_flags(row.iter())).collect()
    }

    /// Cells equal to their column maximum; ties are all flagged.
    pub fn col_best(&self) -> Vec<Vec<bool>> {
        let mut flags = vec![vec![false; self.col_labels.len()]; self.row_labels.len()];
        for c in 0..self.col_labels.len() {
            let col = best_flags(self.values.iter().map(|r| &r[c]));
            for (r, f) in col.into_iter().enumerate() {
                flags[r][c] = f;
            }
        }
        flags
    }

    /// Aligned text. Row maxima are wrapped in `_`, column maxima in `**`.
    pub fn to_text(&self) -> String {
        let rb = self.row_best();
        let cb = self.col_best();
        let mut rows = vec![std::iter::once(self.title.clone())
            .chain(self.col_labels.iter().cloned())
            .collect::<Vec<_>>()];
        for (r, label) in self.row_labels.iter().enumerate() {
            let mut row = vec![label.clone()];
            for (c, v) in self.values[r].iter().enumerate() {
                let mut s = v.map_or_else(|| "err".to_string(), |x| format!("{x:.4}"));
                if rb[r][c] {
                    s = format!("_{s}_");
                }
                if cb[r][c] {
                    s = format!("**{s}**");
                }
                row.push(s);
            }
            rows.push(row);
        }
        align(&rows)
    }

    /// `table,row,column,value,best_in_row,best_in_column` rows, without a
    /// header.
    pub fn csv_rows(&self) -> String {
        let rb = self.row_best();
        let cb = self.col_best();
        let mut out = String::new();
        for (r, label) in self.row_labels.iter().enumerate() {
            for (c, col) in self.col_labels.iter().enumerate() {
                let v = self.values[r][c].map_or_else(String::new, |x| format!("{x:.6}"));
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    csv_field(&self.title),
                    csv_field(label),
                    csv_field(col),
                    v,
                    u8::from(rb[r][c]),
                    u8::from(cb[r][c])
                )
                .unwrap();
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        format!("{}{}", TABLE_CSV_HEADER, self.csv_rows())
    }
}

pub const TABLE_CSV_HEADER: &str = "table,row,column,value,best_in_row,best_in_column\n";

fn cell_value(cell: Option<&Cell>, metric: Metric) -> Option<f64> {
    cell?.outcome.as_ref().ok().map(|o| o.report.mean(metric))
}

fn fmt_alpha(a: f64) -> String {
    let s = format!("{a:.4}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Builds one table of `metric` from the sweep cells.
pub fn render_table(result: &SweepResult, spec: &SweepSpec, metric: Metric, layout: &Layout) -> Table {
    let col_labels: Vec<String> = spec.k_values.iter().map(|k| format!("k={k}")).collect();
    match layout {
        Layout::SpacesByK { mode, alpha } => Table {
            title: format!("{metric} {} α={}", mode.name(), fmt_alpha(*alpha)),
            row_labels: spec.spaces.iter().map(SpaceSpec::label).collect(),
            col_labels,
            values: spec
                .spaces
                .iter()
                .map(|s| {
                    spec.k_values
                        .iter()
                        .map(|&k| cell_value(result.cell(&s.label(), *mode, k, *alpha), metric))
                        .collect()
                })
                .collect(),
        },
        Layout::AlphasByK { space, mode } => Table {
            title: format!("{metric} {} {space}", mode.name()),
            row_labels: spec.alphas.iter().map(|a| format!("α={}", fmt_alpha(*a))).collect(),
            col_labels,
            values: spec
                .alphas
                .iter()
                .map(|&a| {
                    spec.k_values
                        .iter()
                        .map(|&k| cell_value(result.cell(space, *mode, k, a), metric))
                        .collect()
                })
                .collect(),
        },
    }
}

/// Every table worth printing for `metric`: one spaces × k table per (mode,
/// α) and, when several α values were run, one α × k table per (space, mode).
pub fn all_layouts(spec: &SweepSpec) -> Vec<Layout> {
    let mut out = Vec::new();
    for &mode in &spec.modes {
        for &alpha in &spec.alphas {
            out.push(Layout::SpacesByK { mode, alpha });
        }
    }
    if spec.alphas.len() > 1 {
        for s in &spec.spaces {
            for &mode in &spec.modes {
                out.push(Layout::AlphasByK { space: s.label(), mode });
            }
        }
    }
    out
}

/// One row per cell with every mean metric and the p@5 test.
pub fn cells_csv(result: &SweepResult) -> String {
    let mut out = String::from("cell,space,mode,k,alpha,status");
    for m in Metric::ALL {
        write!(out, ",{m}").unwrap();
    }
    out.push_str(",p5_t,p5_p,p5_significant,error\n");
    for cell in &result.cells {
        let k = &cell.key;
        let (k_s, a_s) = if k.is_baseline() {
            (String::new(), String::new())
        } else {
            (k.k.to_string(), fmt_alpha(k.alpha))
        };
        write!(
            out,
            "{},{},{},{k_s},{a_s}",
            csv_field(&k.id()),
            csv_field(&k.space_label()),
            k.mode_name()
        )
        .unwrap();
        match &cell.outcome {
            Ok(o) => {
                out.push_str(",ok");
                for m in Metric::ALL {
                    write!(out, ",{:.6}", o.report.mean(m)).unwrap();
                }
                match o.p5_test {
                    Some(t) => write!(out, ",{:.6},{:.6},{}", t.t, t.p, u8::from(t.significant(SIGNIFICANCE))).unwrap(),
                    None => out.push_str(",,,"),
                }
                out.push_str(",\n");
            }
            Err(e) => {
                out.push_str(",error");
                out.push_str(&",".repeat(Metric::ALL.len() + 3));
                writeln!(out, ",{}", csv_field(e)).unwrap();
            }
        }
    }
    out
}

fn sha256_file(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Input files of a sweep, as written in the spec, with their resolved paths.
pub fn input_files(spec: &SweepSpec) -> Vec<(String, PathBuf)> {
    let mut files = Vec::new();
    let mut add = |p: &Path| files.push((p.to_string_lossy().into_owned(), p.to_path_buf()));
    if let Some(i) = &spec.index {
        add(i);
    } else if let Some(d) = &spec.docs {
        add(d);
    }
    add(&spec.topics);
    add(&spec.qrels);
    let mut stop = |p: &PreprocessSpec| {
        if let Some(s) = p.stopword_path(Path::new("")) {
            files.push((s.to_string_lossy().into_owned(), s));
        }
    };
    stop(&spec.preprocess);
    for s in &spec.spaces {
        if let Some(p) = &s.preprocess {
            stop(p);
        }
    }
    for s in &spec.spaces {
        files.push((s.path.to_string_lossy().into_owned(), s.path.clone()));
    }
    files
}

#[derive(Debug, serde::Serialize)]
struct Manifest<'a> {
    config_sha256: String,
    config: &'a SweepSpec,
    inputs: BTreeMap<String, String>,
    cells: usize,
    errors: usize,
}

/// Writes `runs/<cell>.run`, one `<metric>.csv` per metric, `cells.csv`,
/// `tables.txt` and `manifest.json` into `dir`.
pub fn write_results(result: &SweepResult, spec: &SweepSpec, base_dir: &Path, dir: &Path) -> Result<()> {
    let runs = dir.join("runs");
    fs::create_dir_all(&runs).map_err(|e| Error::io(&runs, e))?;
    let write = |name: &str, data: &[u8]| {
        let p = dir.join(name);
        fs::write(&p, data).map_err(|e| Error::io(&p, e))
    };
    for cell in &result.cells {
        if let Ok(o) = &cell.outcome {
            let mut buf = Vec::new();
            let tag = format!("{}.{}", spec.run_tag, cell.key.id());
            write_run(&o.run, &tag, &mut buf).expect("in-memory write");
            write(&format!("runs/{}.run", cell.key.id()), &buf)?;
        }
    }
    let layouts = all_layouts(spec);
    let mut text = String::new();
    if let Some(b) = result.baseline() {
        writeln!(text, "baseline").unwrap();
        text.push_str(&crate::report::metrics_table(&b.report, false));
        text.push('\n');
    }
    for metric in Metric::ALL {
        let mut csv = String::from(TABLE_CSV_HEADER);
        if let Some(b) = result.baseline() {
            writeln!(csv, "{metric} baseline,baseline,,{:.6},1,1", b.report.mean(metric)).unwrap();
        }
        for layout in &layouts {
            let t = render_table(result, spec, metric, layout);
            csv.push_str(&t.csv_rows());
            text.push_str(&t.to_text());
            text.push('\n');
        }
        write(&format!("{}.csv", metric_file_stem(metric)), csv.as_bytes())?;
    }
    write("tables.txt", text.as_bytes())?;
    write("cells.csv", cells_csv(result).as_bytes())?;

    let mut inputs = BTreeMap::new();
    for (name, path) in input_files(spec) {
        let resolved = base_dir.join(&path);
        let digest = sha256_file(&resolved).unwrap_or_else(|e| format!("unreadable: {e}"));
        inputs.insert(name, digest);
    }
    let manifest = Manifest {
        config_sha256: spec.hash(),
        config: spec,
        inputs,
        cells: result.cells.len(),
        errors: result.errors(),
    };
    let mut json = serde_json::to_vec_pretty(&manifest).expect("serializable");
    json.push(b'\n');
    write("manifest.json", &json)
}

/// `p@5` becomes `p5`.
pub fn metric_file_stem(metric: Metric) -> String {
    metric.name().replace('@', "")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec_json() -> &'static str {
        r#"{"docs":"d.jsonl","topics":"t.xml","qrels":"q.txt","spaces":[{"name":"TMF","path":"v.bin"}]}"#
    }

    #[test]
    fn defaults_follow_the_grid() {
        let s = SweepSpec::from_json(spec_json()).unwrap();
        assert_eq!(s.modes, [ExpansionMode::Local, ExpansionMode::Global]);
        assert_eq!(s.k_values, [1, 2, 3, 4, 5]);
        assert_eq!(s.alphas.len(), 9);
        assert!((s.alphas[2] - 0.3).abs() < 1e-15);
        assert_eq!(s.depth, 1000);
        assert!(s.baseline);
        assert_eq!(s.bm25, Bm25Params::default());
        assert_eq!(s.num_cells(), 2 * 5 * 9 + 1);
    }

    #[test]
    fn validation() {
        let bad = [
            r#"{"docs":"d","topics":"t","qrels":"q","spaces":[]}"#,
            r#"{"docs":"d","topics":"t","qrels":"q","spaces":[{"name":"a","path":"p"}],"k_values":[0]}"#,
            r#"{"docs":"d","topics":"t","qrels":"q","spaces":[{"name":"a","path":"p"}],"alphas":[-0.1]}"#,
            r#"{"topics":"t","qrels":"q","spaces":[{"name":"a","path":"p"}]}"#,
            r#"{"docs":"d","topics":"t","qrels":"q","spaces":[{"name":"a","path":"p"},{"name":"a","path":"p2"}]}"#,
            r#"{"docs":"d","topics":"t","qrels":"q","spaces":[{"name":"a","path":"p"}],"typo":1}"#,
        ];
        for b in bad {
            assert!(SweepSpec::from_json(b).is_err(), "{b}");
        }
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = SweepSpec::from_json(spec_json()).unwrap();
        let mut b = a.clone();
        assert_eq!(a.hash(), b.hash());
        b.k_values = vec![1];
        assert_ne!(a.hash(), b.hash());
    }

    #[test]
    fn lru_cache_evicts_oldest() {
        let space = || {
            let mut b = expandir_core::EmbeddingBuilder::new(1).unwrap();
            b.push("a", &[1.0]).unwrap();
            b.build(Provenance::default())
        };
        let mut c = SpaceCache::new(2);
        for key in ["x", "y", "x", "z", "x", "y"] {
            c.get_or_load(key, || Ok(space()?)).unwrap();
        }
        // x, y loaded; x hit; z evicts y; x hit; y reloaded evicting z
        assert_eq!(c.loads(), 4);
        assert_eq!(c.resident(), 2);
        assert!(c.get_or_load("w", || Err(Error::Config("boom".into()))).is_err());
        assert_eq!(c.resident(), 2);
    }

    fn table(values: Vec<Vec<Option<f64>>>) -> Table {
        Table {
            title: "p@5".into(),
            row_labels: (0..values.len()).map(|i| format!("r{i}")).collect(),
            col_labels: (0..values[0].len()).map(|i| format!("k={}", i + 1)).collect(),
            values,
        }
    }

    #[test]
    fn single_cell_is_best_both_ways() {
        let t = table(vec![vec![Some(0.3)]]);
        assert_eq!(t.row_best(), [[true]]);
        assert_eq!(t.col_best(), [[true]]);
        assert_eq!(t.to_csv(), format!("{TABLE_CSV_HEADER}p@5,r0,k=1,0.300000,1,1\n"));
        assert!(t.to_text().contains("**_0.3000_**"));
    }

    #[test]
    fn ties_are_all_flagged() {
        let t = table(vec![
            vec![Some(0.4), Some(0.2), Some(0.4)],
            vec![Some(0.1), Some(0.2), None],
        ]);
        assert_eq!(t.row_best(), [[true, false, true], [false, true, false]]);
        assert_eq!(t.col_best(), [[true, true, true], [false, true, false]]);
        assert!(t.to_text().contains("err"));
    }
}
