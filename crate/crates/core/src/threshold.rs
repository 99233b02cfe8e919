//! Binarizing weighted document × topic matrices.
//!
//! Weights are row-normalized, then a cut-off δ is chosen as the smallest
//! realized weight at which the fraction of cells with `weight >= δ` does not
//! exceed a target density. Cells missing from the sparse input weigh 0.

use std::collections::HashMap;

use serde::{Deserialize, Serialize, Serializer};

use crate::bitset::BitSet;
use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::rate::Rate;

pub type TopicId = u32;

/// Default target density for threshold selection.
pub const DEFAULT_TARGET_DENSITY: f64 = 0.1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub path: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub doc: usize,
    pub topic: usize,
    pub weight: f64,
}

/// Sparse non-negative document × topic weights.
///
/// `Entry::doc` and `Entry::topic` index into `documents` and `topics`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedDocTopicMatrix {
    documents: Vec<Document>,
    topics: Vec<TopicId>,
    entries: Vec<Entry>,
}

impl WeightedDocTopicMatrix {
    pub fn new(documents: Vec<Document>, topics: Vec<TopicId>, entries: Vec<Entry>) -> Result<Self> {
        let mut doc_ids = HashMap::with_capacity(documents.len());
        for d in &documents {
            if doc_ids.insert(d.id.as_str(), ()).is_some() {
                return Err(Error::DuplicateDocument(d.id.clone()));
            }
        }
        let mut topic_ids = HashMap::with_capacity(topics.len());
        for &t in &topics {
            if topic_ids.insert(t, ()).is_some() {
                return Err(Error::DuplicateTopic(t));
            }
        }
        let mut cells = HashMap::with_capacity(entries.len());
        for e in &entries {
            let doc = documents
                .get(e.doc)
                .ok_or_else(|| Error::DanglingDocument(format!("#{}", e.doc)))?;
            let topic = *topics.get(e.topic).ok_or(Error::DanglingTopic(e.topic as TopicId))?;
            if !e.weight.is_finite() || e.weight < 0.0 {
                return Err(Error::InvalidWeight {
                    doc: doc.id.clone(),
                    topic,
                    weight: e.weight,
                });
            }
            if cells.insert((e.doc, e.topic), ()).is_some() {
                return Err(Error::DuplicateEntry {
                    doc: doc.id.clone(),
                    topic,
                });
            }
        }
        Ok(WeightedDocTopicMatrix {
            documents,
            topics,
            entries,
        })
    }

    /// Dense constructor, mostly for tests: one row per document. Zero cells
    /// are kept as explicit entries.
    pub fn from_dense(documents: Vec<Document>, topics: Vec<TopicId>, rows: &[Vec<f64>]) -> Result<Self> {
        if rows.len() != documents.len() {
            return Err(Error::Shape(format!(
                "{} rows for {} documents",
                rows.len(),
                documents.len()
            )));
        }
        let mut entries = Vec::new();
        for (d, row) in rows.iter().enumerate() {
            if row.len() != topics.len() {
                return Err(Error::Shape(format!("row {d} has {} columns", row.len())));
            }
            entries.extend(row.iter().enumerate().map(|(t, &weight)| Entry {
                doc: d,
                topic: t,
                weight,
            }));
        }
        Self::new(documents, topics, entries)
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn topics(&self) -> &[TopicId] {
        &self.topics
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn cells(&self) -> usize {
        self.documents.len() * self.topics.len()
    }

    /// Weight of a cell; absent cells weigh 0.
    pub fn weight(&self, doc: usize, topic: usize) -> f64 {
        self.entries
            .iter()
            .find(|e| e.doc == doc && e.topic == topic)
            .map_or(0.0, |e| e.weight)
    }

    pub fn max_weight(&self) -> f64 {
        self.entries.iter().map(|e| e.weight).fold(0.0, f64::max)
    }

    fn has_zero_cell(&self) -> bool {
        self.entries.len() < self.cells() || self.entries.iter().any(|e| e.weight == 0.0)
    }
}

/// Divides every document's weights by their sum; all-zero rows stay zero.
pub fn row_normalize(matrix: &WeightedDocTopicMatrix) -> WeightedDocTopicMatrix {
    let mut sums = vec![0.0f64; matrix.documents.len()];
    for e in &matrix.entries {
        sums[e.doc] += e.weight;
    }
    let entries = matrix
        .entries
        .iter()
        .map(|e| Entry {
            weight: if sums[e.doc] > 0.0 { e.weight / sums[e.doc] } else { 0.0 },
            ..*e
        })
        .collect();
    WeightedDocTopicMatrix {
        documents: matrix.documents.clone(),
        topics: matrix.topics.clone(),
        entries,
    }
}

fn count_at_least(matrix: &WeightedDocTopicMatrix, delta: f64) -> usize {
    let explicit = matrix.entries.iter().filter(|e| e.weight >= delta).count();
    let implicit = if delta <= 0.0 {
        matrix.cells() - matrix.entries.len()
    } else {
        0
    };
    explicit + implicit
}

/// Fraction of cells with weight `>= delta`.
pub fn density(matrix: &WeightedDocTopicMatrix, delta: f64) -> Result<f64> {
    if matrix.cells() == 0 {
        return Err(Error::EmptyMatrix);
    }
    Ok(count_at_least(matrix, delta) as f64 / matrix.cells() as f64)
}

/// Outcome of threshold selection.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    /// Selected cut-off; `+∞` (serialized as `null`) when no realized weight
    /// brings the density down to the target.
    #[serde(serialize_with = "infinite_as_null", deserialize_with = "null_as_infinite")]
    pub delta: f64,
    pub achieved_density: f64,
    pub target_density: f64,
    pub candidates_examined: usize,
    /// Density at δ is compared as `count / cells <= target`, boundary included.
    pub comparison: String,
}

impl ThresholdReport {
    pub fn is_unreachable(&self) -> bool {
        self.delta.is_infinite()
    }
}

fn infinite_as_null<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_none()
    }
}

fn null_as_infinite<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
}

/// Smallest realized weight whose density is at most `target_density`.
pub fn select_threshold(matrix: &WeightedDocTopicMatrix, target_density: f64) -> Result<ThresholdReport> {
    if !(target_density > 0.0 && target_density <= 1.0) {
        return Err(Error::rate("target_density", target_density, "(0, 1]"));
    }
    let target = Rate::from_f64(target_density)?;
    let cells = matrix.cells();
    if cells == 0 {
        return Err(Error::EmptyMatrix);
    }

    let mut candidates: Vec<f64> = matrix.entries.iter().map(|e| e.weight).collect();
    if matrix.has_zero_cell() {
        candidates.push(0.0);
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    // Weights sorted descending let each candidate's count be read off by
    // binary search instead of a full pass.
    let mut descending: Vec<f64> = matrix.entries.iter().map(|e| e.weight).collect();
    descending.sort_by(|a, b| b.total_cmp(a));
    let implicit = cells - matrix.entries.len();
    let count_at = |delta: f64| {
        let explicit = descending.partition_point(|&w| w >= delta);
        explicit + if delta <= 0.0 { implicit } else { 0 }
    };

    let comparison = "count / cells <= target".to_string();
    for (i, &delta) in candidates.iter().enumerate() {
        let count = count_at(delta);
        if target.is_not_exceeded_by(count, cells) {
            return Ok(ThresholdReport {
                delta,
                achieved_density: count as f64 / cells as f64,
                target_density,
                candidates_examined: i + 1,
                comparison,
            });
        }
    }
    log::warn!("no realized weight reaches density {target_density}; every cell will be absent");
    Ok(ThresholdReport {
        delta: f64::INFINITY,
        achieved_density: 0.0,
        target_density,
        candidates_examined: candidates.len(),
        comparison,
    })
}

/// Directory of a path: its first `depth` directory components joined by `/`.
///
/// The final component is the file itself. A file directly at the root
/// belongs to directory `"."`.
pub fn directory_of(path: &str, depth: usize) -> Result<String> {
    if depth == 0 {
        return Err(Error::InvalidDepth);
    }
    let parts: Vec<&str> = path.split(['/', '\\']).filter(|p| !p.is_empty() && *p != ".").collect();
    if parts.is_empty() {
        return Err(Error::MissingPath(path.to_string()));
    }
    let dirs = &parts[..parts.len() - 1];
    if dirs.is_empty() {
        return Ok(".".to_string());
    }
    Ok(dirs[..depth.min(dirs.len())].join("/"))
}

/// Incidence `weight >= delta` as a formal context of documents × topics.
///
/// Objects carry their document path; `directory_depth` is validated against
/// every path so that later grouping cannot fail.
pub fn binarize(matrix: &WeightedDocTopicMatrix, delta: f64, directory_depth: usize) -> Result<FormalContext> {
    if delta.is_nan() || delta < 0.0 {
        return Err(Error::rate("delta", delta, "[0, ∞]"));
    }
    let n_topics = matrix.topics.len();
    let mut rows = vec![BitSet::empty(n_topics); matrix.documents.len()];
    if delta <= 0.0 {
        for row in &mut rows {
            *row = BitSet::full(n_topics);
        }
    } else {
        for e in &matrix.entries {
            if e.weight >= delta {
                rows[e.doc].insert(e.topic);
            }
        }
    }
    for d in &matrix.documents {
        directory_of(&d.path, directory_depth).map_err(|err| match err {
            Error::MissingPath(_) => Error::MissingPath(d.id.clone()),
            other => other,
        })?;
    }
    let objects = matrix.documents.iter().map(|d| d.id.clone()).collect();
    let attributes = matrix.topics.iter().map(|t| t.to_string()).collect();
    let paths = matrix.documents.iter().map(|d| d.path.clone()).collect();
    FormalContext::from_rows(objects, attributes, rows)?.with_paths(paths)
}
