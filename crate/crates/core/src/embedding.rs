//! Word vector spaces and exact cosine nearest-neighbor search.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::text::{CorpusVariant, PreprocessConfig};

/// Training hyperparameters, kept as metadata only.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrainingParams {
    pub architecture: String,
    pub dim: usize,
    pub window: usize,
    pub iterations: usize,
}

/// Where a space came from and how its training text was preprocessed.
/// Query terms are looked up in the space after going through `preprocess`.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub variant: CorpusVariant,
    pub preprocess: PreprocessConfig,
    pub training: Option<TrainingParams>,
}

impl Default for Provenance {
    fn default() -> Self {
        Provenance {
            variant: CorpusVariant::new("unnamed", false),
            preprocess: PreprocessConfig::raw(),
            training: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Neighbor {
    pub term: String,
    pub similarity: f64,
}

/// Cosine of the angle between `u` and `v`, clamped to `[-1, 1]`.
pub fn cosine<A, B>(u: &[A], v: &[B]) -> Result<f64>
where
    A: Copy + Into<f64>,
    B: Copy + Into<f64>,
{
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    let mut dot = 0.0;
    let mut nu = 0.0;
    let mut nv = 0.0;
    for (&a, &b) in u.iter().zip(v) {
        let (a, b) = (a.into(), b.into());
        dot += a * b;
        nu += a * a;
        nv += b * b;
    }
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok((dot / (math::sqrt(nu) * math::sqrt(nv))).clamp(-1.0, 1.0))
}

/// Accumulates vectors before the normalized copies are built.
#[derive(Debug, Clone)]
pub struct EmbeddingBuilder {
    dim: usize,
    terms: Vec<String>,
    lookup: BTreeMap<String, u32>,
    raw: Vec<f32>,
}

impl EmbeddingBuilder {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(EmbeddingBuilder {
            dim,
            terms: Vec::new(),
            lookup: BTreeMap::new(),
            raw: Vec::new(),
        })
    }

    pub fn with_capacity(dim: usize, words: usize) -> Result<Self> {
        let mut b = EmbeddingBuilder::new(dim)?;
        b.terms.reserve(words);
        b.raw.reserve(words.saturating_mul(dim));
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds a vector. Returns `Ok(false)` and keeps the first vector when the
    /// term is already present.
    pub fn push(&mut self, term: impl Into<String>, vector: &[f32]) -> Result<bool> {
        if vector.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: vector.len(),
            });
        }
        let term = term.into();
        if self.lookup.contains_key(&term) {
            return Ok(false);
        }
        self.lookup.insert(term.clone(), self.terms.len() as u32);
        self.terms.push(term);
        self.raw.extend_from_slice(vector);
        Ok(true)
    }

    pub fn build(self, provenance: Provenance) -> Result<EmbeddingSpace> {
        if self.terms.is_empty() {
            return Err(Error::EmptyVocabulary);
        }
        let mut unit = Vec::with_capacity(self.raw.len());
        for row in self.raw.chunks_exact(self.dim) {
            let norm = math::sqrt(row.iter().map(|&x| f64::from(x) * f64::from(x)).sum::<f64>());
            if norm == 0.0 {
                unit.extend(core::iter::repeat_n(0.0f32, self.dim));
            } else {
                unit.extend(row.iter().map(|&x| (f64::from(x) / norm) as f32));
            }
        }
        Ok(EmbeddingSpace {
            dim: self.dim,
            terms: self.terms,
            lookup: self.lookup,
            raw: self.raw,
            unit,
            provenance,
        })
    }
}

/// Vocabulary-to-vector map. Raw vectors are kept as loaded; unit-length
/// copies are built once for the neighbor scan.
#[derive(Debug, Clone)]
pub struct EmbeddingSpace {
    dim: usize,
    terms: Vec<String>,
    lookup: BTreeMap<String, u32>,
    raw: Vec<f32>,
    unit: Vec<f32>,
    provenance: Provenance,
}

/// Upper bound on the gap between the single-precision screening score and
/// the exact cosine, doubled. See `knn`.
const SCREEN_SLACK: f64 = 1e-5;

impl EmbeddingSpace {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn set_provenance(&mut self, provenance: Provenance) {
        self.provenance = provenance;
    }

    pub fn contains(&self, term: &str) -> bool {
        self.lookup.contains_key(term)
    }

    pub fn vector(&self, term: &str) -> Option<&[f32]> {
        self.lookup.get(term).map(|&i| self.row(i as usize))
    }

    /// Terms in load order.
    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[f32])> + '_ {
        self.terms
            .iter()
            .enumerate()
            .map(move |(i, t)| (t.as_str(), self.row(i)))
    }

    fn row(&self, i: usize) -> &[f32] {
        &self.raw[i * self.dim..(i + 1) * self.dim]
    }

    fn unit_row(&self, i: usize) -> &[f32] {
        &self.unit[i * self.dim..(i + 1) * self.dim]
    }

    fn check_query(&self, anchor: &[f64], k: usize) -> Result<f64> {
        if k == 0 {
            return Err(Error::ZeroNeighbors);
        }
        if anchor.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: anchor.len(),
            });
        }
        let norm = math::sqrt(anchor.iter().map(|x| x * x).sum::<f64>());
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(norm)
    }

    /// Exact similarity used for ranking. Zero stored vectors score 0.
    fn exact_similarity(&self, anchor: &[f64], i: usize) -> f64 {
        cosine(anchor, self.row(i)).unwrap_or(0.0)
    }

    /// The `k` terms most cosine-similar to `anchor`, skipping `exclude`.
    ///
    /// Results are sorted by descending similarity, ties by ascending term.
    /// A single-precision dot product over the unit vectors screens the
    /// vocabulary; every term within `SCREEN_SLACK` of the k-th screening score
    /// is then rescored with the exact cosine, so the output is identical to
    /// [`EmbeddingSpace::knn_bruteforce`].
    pub fn knn(&self, anchor: &[f64], k: usize, exclude: &BTreeSet<String>) -> Result<Vec<Neighbor>> {
        let norm = self.check_query(anchor, k)?;
        let unit_anchor: Vec<f64> = anchor.iter().map(|x| x / norm).collect();

        let mut screened: Vec<(u32, f64)> = Vec::with_capacity(self.len());
        for (i, term) in self.terms.iter().enumerate() {
            if exclude.contains(term) {
                continue;
            }
            let dot: f64 = unit_anchor
                .iter()
                .zip(self.unit_row(i))
                .map(|(a, &b)| a * f64::from(b))
                .sum();
            screened.push((i as u32, dot));
        }

        if screened.len() > k {
            let (_, kth, _) = screened.select_nth_unstable_by(k - 1, |a, b| b.1.total_cmp(&a.1));
            let threshold = kth.1 - SCREEN_SLACK;
            screened.retain(|&(_, s)| s >= threshold);
        }

        let mut out: Vec<Neighbor> = screened
            .into_iter()
            .map(|(i, _)| Neighbor {
                term: self.terms[i as usize].clone(),
                similarity: self.exact_similarity(anchor, i as usize),
            })
            .collect();
        sort_neighbors(&mut out);
        out.truncate(k);
        Ok(out)
    }

    /// Full scan with the exact cosine and a full sort. Test oracle for
    /// [`EmbeddingSpace::knn`].
    pub fn knn_bruteforce(&self, anchor: &[f64], k: usize, exclude: &BTreeSet<String>) -> Result<Vec<Neighbor>> {
        self.check_query(anchor, k)?;
        let mut all: Vec<Neighbor> = (0..self.len())
            .filter(|&i| !exclude.contains(&self.terms[i]))
            .map(|i| Neighbor {
                term: self.terms[i].clone(),
                similarity: self.exact_similarity(anchor, i),
            })
            .collect();
        sort_neighbors(&mut all);
        all.truncate(k);
        Ok(all)
    }

    /// Raw vector of `term` widened to `f64`.
    pub fn vector_f64(&self, term: &str) -> Option<Vec<f64>> {
        self.vector(term).map(|v| v.iter().map(|&x| f64::from(x)).collect())
    }
}

fn sort_neighbors(v: &mut [Neighbor]) {
    v.sort_by(|a, b| b.similarity.total_cmp(&a.similarity).then_with(|| a.term.cmp(&b.term)));
}
