//! The record every embedding run produces, and its JSON form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::beta1::{GapRatio, KWindow, LayeredBound};
use crate::error::{PlgError, Result};
use crate::graph::VertexSet;
use crate::json;
use crate::realize::CliqueCoverCertificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingKind {
    Sub1,
    Beta1,
}

/// Contiguous id range `[start, start + len)` of one part of the output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartRange {
    pub start: usize,
    pub len: usize,
}

impl PartRange {
    pub fn ids(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.len
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BucketMismatch {
    pub degree: u64,
    pub expected: u64,
    pub found: u64,
}

/// Degree histogram check against `y_i`, after crediting each declared
/// deficit vertex with the one missing unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conformance {
    pub pass: bool,
    pub deficit_vertices: Vec<usize>,
    pub max_deficits: usize,
    pub mismatches: Vec<BucketMismatch>,
}

impl Conformance {
    /// Human-readable reason for a failure, naming the first bad bucket.
    pub fn describe(&self) -> String {
        if self.pass {
            return "conformance ok".into();
        }
        if self.deficit_vertices.len() > self.max_deficits {
            return format!(
                "{} deficit vertices exceed the allowed {}",
                self.deficit_vertices.len(),
                self.max_deficits
            );
        }
        match self.mismatches.first() {
            Some(m) => format!(
                "degree bucket {}: expected {} vertices, found {}",
                m.degree, m.expected, m.found
            ),
            None => "conformance failed".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sub1Details {
    pub n_original: usize,
    pub n_doubled: usize,
    pub y_split: f64,
    pub split_index: u64,
    pub g3_cut: u64,
    /// `xΔ − n` and `|[xΔ, Δ]| − n` after parameter selection.
    pub slack_real: f64,
    pub slack_slots: u64,
    /// Straddling pairs whose surplus half-edge was routed to a fill vertex.
    pub routed: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Beta1Details {
    pub n_original: usize,
    pub d: usize,
    pub k: usize,
    pub seed: u64,
    pub lambda: f64,
    pub lambda_1: f64,
    pub lambda_min: f64,
    pub expander_passes: bool,
    pub k_window: KWindow,
    /// `n·d^{k−1}`: all walks.
    pub n_d: u64,
    /// Walks whose own vertex set is independent; only these are embedded.
    pub n_embedded: usize,
    pub product_max_degree: u64,
    pub h: f64,
    #[serde(rename = "L")]
    pub l: u64,
    pub alon_interval: (f64, f64),
    pub layered_bound: LayeredBound,
    pub gap_ratio: GapRatio,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub schema: String,
    pub kind: EmbeddingKind,
    pub log_base: String,
    pub alpha: f64,
    pub beta: f64,
    pub delta: u64,
    pub x: f64,
    /// How many times α was raised past its initial value.
    pub bumps: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub1: Option<Sub1Details>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta1: Option<Beta1Details>,
    pub parts: BTreeMap<String, PartRange>,
    pub certificates: BTreeMap<String, CliqueCoverCertificate>,
    pub bounds: BTreeMap<String, f64>,
    pub conformance: Conformance,
    pub witness: VertexSet,
    /// Output ids per original vertex (sub1: the pair) or per embedded walk
    /// (beta1: the base vertices of the walk, in walk order).
    pub embedding: Vec<Vec<usize>>,
    pub notes: Vec<String>,
}

impl EmbeddingReport {
    pub fn to_json(&self) -> Result<String> {
        json::to_string(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: EmbeddingReport = serde_json::from_str(text)
            .map_err(|e| PlgError::input(format!("malformed report: {e}")))?;
        if r.schema != json::SCHEMA {
            return Err(PlgError::input(format!(
                "unsupported report schema {:?}",
                r.schema
            )));
        }
        Ok(r)
    }

    pub fn part(&self, name: &str) -> Option<PartRange> {
        self.parts.get(name).copied()
    }
}
