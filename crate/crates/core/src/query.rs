use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Ordered set of `(term, weight)` pairs. Terms are unique and weights are
/// finite and strictly positive. Iteration follows first insertion.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WeightedQuery {
    terms: Vec<(String, f64)>,
}

impl WeightedQuery {
    pub fn new() -> Self {
        WeightedQuery { terms: Vec::new() }
    }

    /// Builds a query from pairs, summing the weights of repeated terms.
    pub fn from_pairs<I, S>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let mut q = WeightedQuery::new();
        for (term, weight) in pairs {
            q.add(term, weight)?;
        }
        Ok(q)
    }

    /// Adds `weight` to `term`, inserting it if absent.
    pub fn add(&mut self, term: impl Into<String>, weight: f64) -> Result<()> {
        let term = term.into();
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::InvalidWeight { term, weight });
        }
        self.accumulate(term, weight);
        Ok(())
    }

    /// Adds `delta` (any sign) and floors the result at `floor`.
    pub(crate) fn accumulate_floored(&mut self, term: String, delta: f64, floor: f64) {
        let w = self.accumulate(term, delta);
        if matches!((*w).partial_cmp(&floor), None | Some(core::cmp::Ordering::Less)) {
            *w = floor;
        }
    }

    fn accumulate(&mut self, term: String, delta: f64) -> &mut f64 {
        match self.terms.iter().position(|(t, _)| *t == term) {
            Some(i) => {
                self.terms[i].1 += delta;
                &mut self.terms[i].1
            }
            None => {
                self.terms.push((term, delta));
                &mut self.terms.last_mut().expect("just pushed").1
            }
        }
    }

    pub fn weight(&self, term: &str) -> Option<f64> {
        self.terms.iter().find(|(t, _)| t == term).map(|(_, w)| *w)
    }

    pub fn contains(&self, term: &str) -> bool {
        self.weight(term).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> + '_ {
        self.terms.iter().map(|(t, w)| (t.as_str(), *w))
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> + '_ {
        self.terms.iter().map(|(t, _)| t.as_str())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies every weight by `factor` (> 0).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        WeightedQuery::from_pairs(self.terms.iter().map(|(t, w)| (t.clone(), w * factor)))
    }
}
