//! Weights files: parsing, validation, CSV import and a seeded synthetic corpus.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::export::TopicInfo;
use crate::threshold::{Document, Entry, TopicId, WeightedDocTopicMatrix};

/// Producers are expected to emit at most this many weights per document.
pub const TOP_TOPICS_PER_DOCUMENT: usize = 10;

/// Deserializes JSON, reporting the path of the first offending field.
pub(crate) fn from_json_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|err| {
        let path = err.path().to_string();
        Error::Schema {
            path,
            message: err.into_inner().to_string(),
        }
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentRecord {
    pub id: String,
    pub path: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopicRecord {
    pub id: TopicId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub words: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word_scores: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightRecord {
    pub doc: String,
    pub topic: TopicId,
    pub weight: f64,
}

/// Transport format for document × topic weights plus topic descriptions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsFile {
    pub documents: Vec<DocumentRecord>,
    pub topics: Vec<TopicRecord>,
    pub weights: Vec<WeightRecord>,
}

/// Validated contents of a weights file.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedWeights {
    pub matrix: WeightedDocTopicMatrix,
    pub topics: BTreeMap<TopicId, TopicInfo>,
    pub warnings: Vec<String>,
}

impl WeightsFile {
    pub fn from_json(text: &str) -> Result<Self> {
        from_json_str(text)
    }

    /// JSON with one record per line.
    pub fn to_json(&self) -> String {
        fn section<T: Serialize>(out: &mut String, name: &str, items: &[T], last: bool) {
            write!(out, "  \"{name}\": [").unwrap();
            for (i, item) in items.iter().enumerate() {
                out.push_str(if i == 0 { "\n    " } else { ",\n    " });
                out.push_str(&serde_json::to_string(item).expect("record serializes"));
            }
            if !items.is_empty() {
                out.push_str("\n  ");
            }
            out.push_str(if last { "]\n" } else { "],\n" });
        }
        let mut out = String::from("{\n");
        section(&mut out, "documents", &self.documents, false);
        section(&mut out, "topics", &self.topics, false);
        section(&mut out, "weights", &self.weights, true);
        out.push_str("}\n");
        out
    }

    /// Checks every invariant and builds the in-memory matrix.
    pub fn validate(&self) -> Result<ParsedWeights> {
        let mut doc_index = HashMap::with_capacity(self.documents.len());
        for (i, d) in self.documents.iter().enumerate() {
            if doc_index.insert(d.id.as_str(), i).is_some() {
                return Err(Error::DuplicateDocument(d.id.clone()));
            }
            if d.path.trim().is_empty() {
                return Err(Error::MissingPath(d.id.clone()));
            }
        }
        let mut topic_index = HashMap::with_capacity(self.topics.len());
        let mut topics = BTreeMap::new();
        for (i, t) in self.topics.iter().enumerate() {
            if topic_index.insert(t.id, i).is_some() {
                return Err(Error::DuplicateTopic(t.id));
            }
            if let Some(words) = &t.words {
                if words.is_empty() {
                    return Err(Error::InvalidTopic(t.id, "empty word list".into()));
                }
                let info = TopicInfo {
                    topic_id: t.id,
                    words: words.clone(),
                    word_scores: t.word_scores.clone(),
                };
                info.validate()?;
                topics.insert(t.id, info);
            } else if t.word_scores.is_some() {
                return Err(Error::InvalidTopic(t.id, "word scores without words".into()));
            }
        }

        let mut entries = Vec::with_capacity(self.weights.len());
        let mut per_doc = vec![0usize; self.documents.len()];
        for w in &self.weights {
            let doc = *doc_index
                .get(w.doc.as_str())
                .ok_or_else(|| Error::DanglingDocument(w.doc.clone()))?;
            let topic = *topic_index.get(&w.topic).ok_or(Error::DanglingTopic(w.topic))?;
            per_doc[doc] += 1;
            entries.push(Entry {
                doc,
                topic,
                weight: w.weight,
            });
        }
        let documents = self
            .documents
            .iter()
            .map(|d| Document {
                id: d.id.clone(),
                path: d.path.clone(),
            })
            .collect();
        let matrix = WeightedDocTopicMatrix::new(documents, self.topics.iter().map(|t| t.id).collect(), entries)?;

        let mut warnings = Vec::new();
        for (d, &count) in per_doc.iter().enumerate() {
            if count > TOP_TOPICS_PER_DOCUMENT {
                let msg = format!(
                    "document `{}` has {count} weights, more than the expected {TOP_TOPICS_PER_DOCUMENT}",
                    self.documents[d].id
                );
                log::warn!("{msg}");
                warnings.push(msg);
            }
        }
        Ok(ParsedWeights {
            matrix,
            topics,
            warnings,
        })
    }

    /// Reads `doc,path,topic,weight` rows (with header). Documents and topics
    /// are declared in order of first appearance; topics carry no words.
    pub fn from_csv<R: std::io::Read>(reader: R) -> Result<Self> {
        #[derive(Deserialize)]
        struct Row {
            doc: String,
            path: String,
            topic: TopicId,
            weight: f64,
        }
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let mut documents: Vec<DocumentRecord> = Vec::new();
        let mut doc_paths: HashMap<String, String> = HashMap::new();
        let mut topics: Vec<TopicRecord> = Vec::new();
        let mut weights = Vec::new();
        for (line, row) in rdr.deserialize::<Row>().enumerate() {
            let row = row.map_err(|e| Error::Csv(format!("record {}: {e}", line + 1)))?;
            match doc_paths.get(&row.doc) {
                Some(path) if path != &row.path => {
                    return Err(Error::Csv(format!(
                        "record {}: document `{}` listed under paths `{path}` and `{}`",
                        line + 1,
                        row.doc,
                        row.path
                    )))
                }
                Some(_) => {}
                None => {
                    doc_paths.insert(row.doc.clone(), row.path.clone());
                    documents.push(DocumentRecord {
                        id: row.doc.clone(),
                        path: row.path,
                    });
                }
            }
            if !topics.iter().any(|t| t.id == row.topic) {
                topics.push(TopicRecord {
                    id: row.topic,
                    words: None,
                    word_scores: None,
                });
            }
            weights.push(WeightRecord {
                doc: row.doc,
                topic: row.topic,
                weight: row.weight,
            });
        }
        Ok(WeightsFile {
            documents,
            topics,
            weights,
        })
    }
}

/// Parses and validates a weights file.
pub fn parse_weights(bytes: &[u8]) -> Result<ParsedWeights> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Schema {
        path: ".".into(),
        message: format!("not UTF-8: {e}"),
    })?;
    WeightsFile::from_json(text)?.validate()
}

/// Parameters of the synthetic corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyntheticConfig {
    pub seed: u64,
    pub n_dirs: usize,
    pub docs_per_dir: usize,
    pub n_topics: usize,
    pub topics_per_doc: usize,
    pub words_per_topic: usize,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            seed: 0,
            n_dirs: 3,
            docs_per_dir: 50,
            n_topics: 20,
            topics_per_doc: TOP_TOPICS_PER_DOCUMENT,
            words_per_topic: 10,
        }
    }
}

impl SyntheticConfig {
    /// Number of topics each directory favours.
    pub fn biased_topics_per_dir(&self) -> usize {
        (self.n_topics / self.n_dirs)
            .clamp(2, self.n_topics.max(2))
            .min(self.n_topics)
    }
}

/// Topic subsets favoured by each directory of a synthetic corpus.
pub fn synthetic_biases(config: &SyntheticConfig) -> Vec<Vec<TopicId>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    biases(config, &mut rng)
}

fn biases(config: &SyntheticConfig, rng: &mut ChaCha8Rng) -> Vec<Vec<TopicId>> {
    let size = config.biased_topics_per_dir();
    (0..config.n_dirs)
        .map(|_| {
            let mut picked: Vec<TopicId> = sample(rng, config.n_topics, size)
                .into_iter()
                .map(|t| t as TopicId)
                .collect();
            picked.sort_unstable();
            picked
        })
        .collect()
}

/// A deterministic corpus in which every directory leans on its own topic subset.
///
/// Each document gets `topics_per_doc` distinct topics, at least one of them
/// from its directory's subset. Favoured topics draw weights in `[0.3, 1)`,
/// the rest in `[0, 0.15)`, rounded to six decimals.
pub fn generate_synthetic(config: &SyntheticConfig) -> Result<WeightsFile> {
    let invalid = |msg: &str| Err(Error::InvalidGenerator(msg.to_string()));
    if config.n_dirs == 0 || config.docs_per_dir == 0 || config.n_topics == 0 || config.topics_per_doc == 0 {
        return invalid("all counts must be positive");
    }
    if config.topics_per_doc > config.n_topics {
        return invalid("topics_per_doc exceeds n_topics");
    }
    if config.n_topics > TopicId::MAX as usize {
        return invalid("too many topics");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let favoured = biases(config, &mut rng);

    let topics = (0..config.n_topics)
        .map(|t| {
            let words: Vec<String> = (0..config.words_per_topic).map(|w| format!("t{t}w{w}")).collect();
            let scores: Vec<f64> = (0..config.words_per_topic)
                .map(|w| round6(1.0 / (w as f64 + 1.0)))
                .collect();
            TopicRecord {
                id: t as TopicId,
                words: (!words.is_empty()).then_some(words),
                word_scores: (!scores.is_empty()).then_some(scores),
            }
        })
        .collect();

    let mut documents = Vec::new();
    let mut weights = Vec::new();
    for (d, bias) in favoured.iter().enumerate() {
        let others: Vec<TopicId> = (0..config.n_topics as TopicId).filter(|t| !bias.contains(t)).collect();
        for j in 0..config.docs_per_dir {
            let id = format!("dir{d:02}-doc{j:03}");
            documents.push(DocumentRecord {
                id: id.clone(),
                path: format!("dir{d:02}/doc{j:03}.txt"),
            });

            let max_bias = bias.len().min(config.topics_per_doc);
            let min_bias = config.topics_per_doc.saturating_sub(others.len()).max(1);
            let n_bias = rng.gen_range(min_bias..=max_bias);
            let n_other = config.topics_per_doc - n_bias;
            let mut chosen: Vec<(TopicId, f64)> = Vec::with_capacity(config.topics_per_doc);
            for i in sample(&mut rng, bias.len(), n_bias) {
                chosen.push((bias[i], round6(rng.gen_range(0.3..1.0))));
            }
            for i in sample(&mut rng, others.len(), n_other) {
                chosen.push((others[i], round6(rng.gen_range(0.0..0.15))));
            }
            chosen.sort_by_key(|&(t, _)| t);
            weights.extend(chosen.into_iter().map(|(topic, weight)| WeightRecord {
                doc: id.clone(),
                topic,
                weight,
            }));
        }
    }
    Ok(WeightsFile {
        documents,
        topics,
        weights,
    })
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}
