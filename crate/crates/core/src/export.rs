//! Reduced labeling and serialization of concept lattices.
//!
//! In a reduced labeling each attribute is written once, at the largest
//! concept whose intent holds it, and is inherited by everything below; each
//! object is written once, at the smallest concept whose extent holds it, and
//! is inherited by everything above. Numeric attribute labels (topic IDs) are
//! compressed into runs such as `3-5, 9`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::context::{ConceptSet, FormalConcept, FormalContext};
use crate::error::{Error, Result};
use crate::rate::Rate;
use crate::threshold::TopicId;

pub const LATTICE_SCHEMA: &str = "fatcat-lattice/1";

pub const DEFAULT_WORDS_PER_TOPIC: usize = 5;

/// Descriptive words of a topic, best first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TopicInfo {
    pub topic_id: TopicId,
    pub words: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word_scores: Option<Vec<f64>>,
}

impl TopicInfo {
    pub fn validate(&self) -> Result<()> {
        if let Some(scores) = &self.word_scores {
            if scores.len() != self.words.len() {
                return Err(Error::InvalidTopic(
                    self.topic_id,
                    format!("{} words but {} scores", self.words.len(), scores.len()),
                ));
            }
            if scores.iter().any(|s| !s.is_finite()) {
                return Err(Error::InvalidTopic(self.topic_id, "non-finite word score".into()));
            }
        }
        Ok(())
    }
}

/// A concept set with reduced attribute and object labels.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledLattice {
    pub minsupp: Option<Rate>,
    pub concepts: ConceptSet,
    /// Attribute → index of its attribute concept, in context column order.
    pub attribute_labels: IndexMap<String, usize>,
    /// Object → index of its object concept; objects whose object concept is
    /// not in the set are absent.
    pub object_labels: IndexMap<String, usize>,
}

impl LabeledLattice {
    pub fn with_minsupp(mut self, minsupp: Rate) -> Self {
        self.minsupp = Some(minsupp);
        self
    }

    /// Attribute names labeling concept `i`.
    pub fn attributes_at(&self, i: usize) -> Vec<&str> {
        self.attribute_labels
            .iter()
            .filter(|(_, &c)| c == i)
            .map(|(m, _)| m.as_str())
            .collect()
    }

    pub fn objects_at(&self, i: usize) -> Vec<&str> {
        self.object_labels
            .iter()
            .filter(|(_, &c)| c == i)
            .map(|(g, _)| g.as_str())
            .collect()
    }
}

/// Places every attribute at its attribute concept `(m′, m″)` and every
/// object at its object concept `(g″, g′)` when that concept is present.
///
/// `context` must be the context `concepts` was computed from.
pub fn reduced_labels(concepts: &ConceptSet, context: &FormalContext) -> LabeledLattice {
    let list = concepts.concepts();
    let mut attribute_labels = IndexMap::new();
    for (m, name) in concepts.attributes().iter().enumerate() {
        let best = list
            .iter()
            .enumerate()
            .filter(|(_, c)| c.intent.contains(m))
            .max_by_key(|(i, c)| (c.extent.len(), std::cmp::Reverse(*i)));
        if let Some((i, _)) = best {
            attribute_labels.insert(name.clone(), i);
        }
    }

    let by_intent: HashMap<&BitSet, usize> = list.iter().enumerate().map(|(i, c)| (&c.intent, i)).collect();
    let mut object_labels = IndexMap::new();
    for (g, name) in concepts.objects().iter().enumerate() {
        if let Some(&i) = by_intent.get(context.row(g)) {
            object_labels.insert(name.clone(), i);
        }
    }
    LabeledLattice {
        minsupp: None,
        concepts: concepts.clone(),
        attribute_labels,
        object_labels,
    }
}

/// Renders IDs as comma-separated ascending runs: `{3,4,5,9}` → `"3-5, 9"`.
pub fn compress_ranges<I: IntoIterator<Item = TopicId>>(ids: I) -> String {
    let mut ids: Vec<TopicId> = ids.into_iter().collect();
    ids.sort_unstable();
    ids.dedup();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < ids.len() {
        let lo = ids[i];
        let mut hi = lo;
        while i + 1 < ids.len() && ids[i + 1] == hi + 1 {
            i += 1;
            hi = ids[i];
        }
        parts.push(if lo == hi { lo.to_string() } else { format!("{lo}-{hi}") });
        i += 1;
    }
    parts.join(", ")
}

/// Inverse of [`compress_ranges`].
pub fn expand_ranges(text: &str) -> Result<Vec<TopicId>> {
    let bad = |part: &str| Error::Schema {
        path: "ranges".into(),
        message: format!("cannot read `{part}` as an ID or ID range"),
    };
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((lo, hi)) => {
                let lo: TopicId = lo.trim().parse().map_err(|_| bad(part))?;
                let hi: TopicId = hi.trim().parse().map_err(|_| bad(part))?;
                if lo > hi {
                    return Err(bad(part));
                }
                out.extend(lo..=hi);
            }
            None => out.push(part.parse().map_err(|_| bad(part))?),
        }
    }
    Ok(out)
}

fn attribute_label_text(names: &[&str]) -> String {
    let ids: Option<Vec<TopicId>> = names.iter().map(|n| n.parse().ok()).collect();
    match ids {
        Some(ids) => compress_ranges(ids),
        None => names.join(", "),
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n")
}

/// Hasse diagram as a DOT digraph, edges pointing from parent to child.
///
/// Node `cI` is concept `I` of the canonical order. When `topics` is given, a
/// legend of `//` comment lines lists the first `words_per_topic` words of
/// every labeled topic.
pub fn to_dot(
    lattice: &LabeledLattice,
    topics: Option<&BTreeMap<TopicId, TopicInfo>>,
    words_per_topic: usize,
) -> String {
    let mut out = String::from("digraph lattice {\n");
    out.push_str("  rankdir=TB;\n");
    out.push_str("  node [shape=box, style=rounded, fontname=\"Helvetica\"];\n");
    out.push_str("  edge [arrowhead=none];\n");
    for i in 0..lattice.concepts.len() {
        let attrs = attribute_label_text(&lattice.attributes_at(i));
        let objs = lattice.objects_at(i).join(", ");
        let label = match (attrs.is_empty(), objs.is_empty()) {
            (true, true) => String::new(),
            (false, true) => attrs,
            (true, false) => format!("\n{objs}"),
            (false, false) => format!("{attrs}\n{objs}"),
        };
        writeln!(out, "  c{i} [label=\"{}\"];", dot_escape(&label)).unwrap();
    }
    for (p, c) in lattice.concepts.covers() {
        writeln!(out, "  c{p} -> c{c};").unwrap();
    }
    if let Some(topics) = topics {
        let legend: Vec<String> = lattice
            .attribute_labels
            .keys()
            .filter_map(|name| name.parse::<TopicId>().ok())
            .filter_map(|id| topics.get(&id))
            .map(|info| {
                let words: Vec<&str> = info.words.iter().take(words_per_topic).map(String::as_str).collect();
                legend_line(info.topic_id, &words)
            })
            .collect();
        if !legend.is_empty() {
            out.push_str("  // topics\n");
            for line in legend {
                writeln!(out, "  // {line}").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

/// `"34: gun weapons rifles pistol firearm"`.
pub fn legend_line(topic: TopicId, words: &[&str]) -> String {
    // Comment lines end at a newline, so words must not contain one.
    let words: Vec<String> = words.iter().map(|w| w.replace(['\n', '\r'], " ")).collect();
    format!("{topic}: {}", words.join(" "))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConceptJson {
    extent: Vec<String>,
    intent: Vec<String>,
    support: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeJson {
    schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    minsupp: Option<Rate>,
    objects: Vec<String>,
    attributes: Vec<String>,
    concepts: Vec<ConceptJson>,
    covers: Vec<(usize, usize)>,
    attribute_labels: IndexMap<String, usize>,
    object_labels: IndexMap<String, usize>,
}

/// Versioned JSON with a fixed field order.
pub fn to_json(lattice: &LabeledLattice) -> String {
    let cs = &lattice.concepts;
    let json = LatticeJson {
        schema: LATTICE_SCHEMA.to_string(),
        minsupp: lattice.minsupp,
        objects: cs.objects().to_vec(),
        attributes: cs.attributes().to_vec(),
        concepts: (0..cs.len())
            .map(|i| ConceptJson {
                extent: cs.extent_names(i),
                intent: cs.intent_names(i),
                support: cs.concepts()[i].support,
            })
            .collect(),
        covers: cs.covers().to_vec(),
        attribute_labels: lattice.attribute_labels.clone(),
        object_labels: lattice.object_labels.clone(),
    };
    let mut text = serde_json::to_string_pretty(&json).expect("lattice serializes");
    text.push('\n');
    text
}

pub fn from_json(text: &str) -> Result<LabeledLattice> {
    let json: LatticeJson = crate::ingest::from_json_str(text)?;
    if json.schema != LATTICE_SCHEMA {
        return Err(Error::Schema {
            path: "schema".into(),
            message: format!("unsupported schema `{}`", json.schema),
        });
    }
    let index = |names: &[String]| -> HashMap<String, usize> {
        names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect()
    };
    let objects = index(&json.objects);
    let attributes = index(&json.attributes);
    let mut concepts = Vec::with_capacity(json.concepts.len());
    for (i, c) in json.concepts.iter().enumerate() {
        let mut extent = BitSet::empty(json.objects.len());
        for g in &c.extent {
            extent.insert(*objects.get(g).ok_or_else(|| Error::UnknownObject(g.clone()))?);
        }
        let mut intent = BitSet::empty(json.attributes.len());
        for m in &c.intent {
            intent.insert(*attributes.get(m).ok_or_else(|| Error::UnknownAttribute(m.clone()))?);
        }
        if !(0.0..=1.0).contains(&c.support) {
            return Err(Error::Schema {
                path: format!("concepts[{i}].support"),
                message: "support outside [0, 1]".into(),
            });
        }
        concepts.push(FormalConcept {
            extent,
            intent,
            support: c.support,
        });
    }
    let n = concepts.len();
    let out_of_range = |i: usize| i >= n;
    if let Some(pos) = json
        .covers
        .iter()
        .position(|&(p, c)| out_of_range(p) || out_of_range(c))
    {
        return Err(Error::Schema {
            path: format!("covers[{pos}]"),
            message: "concept index out of range".into(),
        });
    }
    for (key, labels) in [
        ("attribute_labels", &json.attribute_labels),
        ("object_labels", &json.object_labels),
    ] {
        if let Some((name, _)) = labels.iter().find(|(_, &i)| out_of_range(i)) {
            return Err(Error::Schema {
                path: format!("{key}.{name}"),
                message: "concept index out of range".into(),
            });
        }
    }
    Ok(LabeledLattice {
        minsupp: json.minsupp,
        concepts: ConceptSet::from_raw(json.objects, json.attributes, concepts, json.covers),
        attribute_labels: json.attribute_labels,
        object_labels: json.object_labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::enumerate_concepts;
    use crate::iceberg::iceberg_concepts;

    fn k2() -> FormalContext {
        FormalContext::new(
            vec!["g1".into(), "g2".into()],
            vec!["m1".into(), "m2".into()],
            &[vec![true, true], vec![true, false]],
        )
        .unwrap()
    }

    fn k2_lattice() -> LabeledLattice {
        let ctx = k2();
        reduced_labels(&enumerate_concepts(&ctx).unwrap(), &ctx)
    }

    #[test]
    fn k2_labels() {
        let ll = k2_lattice();
        assert_eq!(ll.attribute_labels["m1"], 0);
        assert_eq!(ll.attribute_labels["m2"], 1);
        assert_eq!(ll.object_labels["g2"], 0);
        assert_eq!(ll.object_labels["g1"], 1);
    }

    #[test]
    fn single_concept_takes_all_labels() {
        let ctx = FormalContext::new(vec!["g".into()], vec!["m".into()], &[vec![true]]).unwrap();
        let ll = reduced_labels(&enumerate_concepts(&ctx).unwrap(), &ctx);
        assert_eq!(ll.attributes_at(0), vec!["m"]);
        assert_eq!(ll.objects_at(0), vec!["g"]);
    }

    #[test]
    fn iceberg_labels_are_partial() {
        let ctx = k2();
        let ice = iceberg_concepts(&ctx, Rate::from_f64(0.9).unwrap()).unwrap();
        let ll = reduced_labels(&ice.concepts, &ctx);
        assert!(!ll.object_labels.contains_key("g1"));
        assert_eq!(ll.object_labels["g2"], 0);
        assert!(!ll.attribute_labels.contains_key("m2"));
    }

    #[test]
    fn ranges() {
        assert_eq!(compress_ranges([3, 4, 5, 9]), "3-5, 9");
        assert_eq!(compress_ranges([7]), "7");
        assert_eq!(compress_ranges([]), "");
        assert_eq!(compress_ranges([9, 1, 2, 2]), "1-2, 9");
        assert_eq!(expand_ranges("3-5, 9").unwrap(), vec![3, 4, 5, 9]);
        assert!(expand_ranges("5-3").is_err());
        assert!(expand_ranges("x").is_err());
    }

    #[test]
    fn dot_k2() {
        let dot = to_dot(&k2_lattice(), None, 5);
        assert!(dot.starts_with("digraph lattice {"));
        assert!(dot.contains("c0 [label=\"m1\\ng2\"];"));
        assert!(dot.contains("c1 [label=\"m2\\ng1\"];"));
        assert_eq!(dot.matches(" -> ").count(), 1);
        assert!(dot.contains("c0 -> c1;"));
    }

    #[test]
    fn dot_empty_lattice() {
        let cs = ConceptSet::from_parts(vec![], vec![], vec![]).unwrap();
        let ctx = FormalContext::new(vec![], vec![], &[]).unwrap();
        let dot = to_dot(&reduced_labels(&cs, &ctx), None, 5);
        assert_eq!(dot.matches('[').count(), 2); // only the default node/edge attributes
        assert!(dot.trim_end().ends_with('}'));
    }

    #[test]
    fn dot_legend() {
        let ctx = FormalContext::new(vec!["Military".into()], vec!["34".into()], &[vec![true]]).unwrap();
        let ll = reduced_labels(&enumerate_concepts(&ctx).unwrap(), &ctx);
        let words = ["gun", "weapons", "rifles", "pistol", "firearm", "ammunition"];
        let mut topics = BTreeMap::new();
        topics.insert(
            34,
            TopicInfo {
                topic_id: 34,
                words: words.iter().map(|w| w.to_string()).collect(),
                word_scores: None,
            },
        );
        let dot = to_dot(&ll, Some(&topics), 5);
        assert!(dot.contains("// 34: gun weapons rifles pistol firearm\n"));
        assert!(!dot.contains("ammunition"));
    }

    #[test]
    fn dot_escapes_names() {
        let ctx = FormalContext::new(vec!["say \"hi\"".into()], vec!["m".into()], &[vec![true]]).unwrap();
        let ll = reduced_labels(&enumerate_concepts(&ctx).unwrap(), &ctx);
        assert!(to_dot(&ll, None, 5).contains("say \\\"hi\\\""));
    }

    #[test]
    fn json_k2() {
        let ll = k2_lattice();
        let text = to_json(&ll);
        assert!(text.contains("\"support\": 1.0"));
        assert!(text.contains("\"support\": 0.5"));
        let back = from_json(&text).unwrap();
        assert_eq!(back, ll);
        assert_eq!(to_json(&back), text);
        let schema_pos = text.find("\"schema\"").unwrap();
        let concepts_pos = text.find("\"concepts\"").unwrap();
        let covers_pos = text.find("\"covers\"").unwrap();
        assert!(schema_pos < concepts_pos && concepts_pos < covers_pos);
    }

    #[test]
    fn json_with_minsupp() {
        let ctx = k2();
        let ice = iceberg_concepts(&ctx, Rate::from_f64(0.5).unwrap()).unwrap();
        let ll = reduced_labels(&ice.concepts, &ctx).with_minsupp(ice.minsupp);
        let text = to_json(&ll);
        assert!(text.contains("\"minsupp\": 0.5"));
        assert_eq!(to_json(&from_json(&text).unwrap()), text);
    }

    #[test]
    fn json_rejects_bad_indices() {
        let text = to_json(&k2_lattice()).replace("\"m2\": 1", "\"m2\": 7");
        assert!(from_json(&text).is_err());
        let text = to_json(&k2_lattice()).replace(LATTICE_SCHEMA, "other/9");
        assert!(from_json(&text).is_err());
    }

    #[test]
    fn topic_info_validation() {
        let t = TopicInfo {
            topic_id: 1,
            words: vec!["a".into()],
            word_scores: Some(vec![0.1, 0.2]),
        };
        assert!(t.validate().is_err());
    }
}
