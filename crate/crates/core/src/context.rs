//! Formal contexts, derivation operators and exact concept enumeration.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Attribute count above which [`enumerate_concepts`] refuses to run.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 25;

/// A binary object × attribute incidence with named rows and columns.
///
/// Row and column order are fixed at construction and every derived output
/// is reported in that order. Objects may optionally carry a path, which is
/// what directory aggregation groups on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<BitSet>,
    columns: Vec<BitSet>,
    paths: Option<Vec<String>>,
    object_index: HashMap<String, usize>,
    attribute_index: HashMap<String, usize>,
}

impl FormalContext {
    /// Builds a context from a dense boolean matrix (rows = objects).
    pub fn new(objects: Vec<String>, attributes: Vec<String>, incidence: &[Vec<bool>]) -> Result<Self> {
        if incidence.len() != objects.len() {
            return Err(Error::Shape(format!(
                "{} rows for {} objects",
                incidence.len(),
                objects.len()
            )));
        }
        let m = attributes.len();
        let mut rows = Vec::with_capacity(objects.len());
        for (i, row) in incidence.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Shape(format!("row {i} has {} columns, expected {m}", row.len())));
            }
            rows.push(BitSet::from_indices(
                m,
                row.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j),
            ));
        }
        Self::from_rows(objects, attributes, rows)
    }

    /// Builds a context from per-object attribute sets.
    pub fn from_rows(objects: Vec<String>, attributes: Vec<String>, rows: Vec<BitSet>) -> Result<Self> {
        let object_index = index_names(&objects).map_err(Error::DuplicateObject)?;
        let attribute_index = index_names(&attributes).map_err(Error::DuplicateAttribute)?;
        if rows.len() != objects.len() {
            return Err(Error::Shape(format!(
                "{} rows for {} objects",
                rows.len(),
                objects.len()
            )));
        }
        let m = attributes.len();
        if let Some(i) = rows.iter().position(|r| r.universe() != m) {
            return Err(Error::Shape(format!(
                "row {i} has universe {}, expected {m}",
                rows[i].universe()
            )));
        }
        let mut columns = vec![BitSet::empty(objects.len()); m];
        for (g, row) in rows.iter().enumerate() {
            for j in row.iter() {
                columns[j].insert(g);
            }
        }
        Ok(FormalContext {
            objects,
            attributes,
            rows,
            columns,
            paths: None,
            object_index,
            attribute_index,
        })
    }

    /// Attaches one path per object.
    pub fn with_paths(mut self, paths: Vec<String>) -> Result<Self> {
        if paths.len() != self.objects.len() {
            return Err(Error::Shape(format!(
                "{} paths for {} objects",
                paths.len(),
                self.objects.len()
            )));
        }
        self.paths = Some(paths);
        Ok(self)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn paths(&self) -> Option<&[String]> {
        self.paths.as_deref()
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attributes.len()
    }

    /// Attribute set of object `g`.
    pub fn row(&self, g: usize) -> &BitSet {
        &self.rows[g]
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    /// Object set of attribute `m`.
    pub fn column(&self, m: usize) -> &BitSet {
        &self.columns[m]
    }

    pub fn has(&self, g: usize, m: usize) -> bool {
        self.rows[g].contains(m)
    }

    /// Number of incident pairs.
    pub fn incidence_count(&self) -> usize {
        self.rows.iter().map(BitSet::len).sum()
    }

    /// Fraction of incident cells; 0 for a context without cells.
    pub fn density(&self) -> f64 {
        let cells = self.n_objects() * self.n_attributes();
        if cells == 0 {
            0.0
        } else {
            self.incidence_count() as f64 / cells as f64
        }
    }

    pub fn object_id(&self, name: &str) -> Result<usize> {
        self.object_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn attribute_id(&self, name: &str) -> Result<usize> {
        self.attribute_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownAttribute(name.to_string()))
    }

    pub fn object_set<S: AsRef<str>>(&self, names: &[S]) -> Result<BitSet> {
        let mut set = BitSet::empty(self.n_objects());
        for n in names {
            set.insert(self.object_id(n.as_ref())?);
        }
        Ok(set)
    }

    pub fn attribute_set<S: AsRef<str>>(&self, names: &[S]) -> Result<BitSet> {
        let mut set = BitSet::empty(self.n_attributes());
        for n in names {
            set.insert(self.attribute_id(n.as_ref())?);
        }
        Ok(set)
    }

    pub fn object_names(&self, set: &BitSet) -> Vec<String> {
        set.iter().map(|g| self.objects[g].clone()).collect()
    }

    pub fn attribute_names(&self, set: &BitSet) -> Vec<String> {
        set.iter().map(|m| self.attributes[m].clone()).collect()
    }

    /// `A′`: attributes shared by every object in `objects`.
    pub fn intent_of(&self, objects: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.n_attributes());
        for g in objects.iter() {
            out.intersect_with(&self.rows[g]);
        }
        out
    }

    /// `B′`: objects having every attribute in `attributes`.
    pub fn extent_of(&self, attributes: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.n_objects());
        for m in attributes.iter() {
            out.intersect_with(&self.columns[m]);
        }
        out
    }

    /// `B″`.
    pub fn closure_of(&self, attributes: &BitSet) -> BitSet {
        self.intent_of(&self.extent_of(attributes))
    }

    /// `|B′|`.
    pub fn support_count(&self, attributes: &BitSet) -> usize {
        self.extent_of(attributes).len()
    }

    /// Attributes shared by the named objects, in column order.
    pub fn derive_intent<S: AsRef<str>>(&self, objects: &[S]) -> Result<Vec<String>> {
        let set = self.object_set(objects)?;
        Ok(self.attribute_names(&self.intent_of(&set)))
    }

    /// Objects having all the named attributes, in row order.
    pub fn derive_extent<S: AsRef<str>>(&self, attributes: &[S]) -> Result<Vec<String>> {
        let set = self.attribute_set(attributes)?;
        Ok(self.object_names(&self.extent_of(&set)))
    }

    pub fn closure<S: AsRef<str>>(&self, attributes: &[S]) -> Result<Vec<String>> {
        let set = self.attribute_set(attributes)?;
        Ok(self.attribute_names(&self.closure_of(&set)))
    }

    /// `|B′| / |G|`; undefined (an error) when there are no objects.
    pub fn support<S: AsRef<str>>(&self, attributes: &[S]) -> Result<f64> {
        let set = self.attribute_set(attributes)?;
        if self.n_objects() == 0 {
            return Err(Error::EmptyObjects);
        }
        Ok(self.support_count(&set) as f64 / self.n_objects() as f64)
    }

    /// Swaps the roles of objects and attributes. Paths are dropped.
    pub fn transpose(&self) -> FormalContext {
        FormalContext {
            objects: self.attributes.clone(),
            attributes: self.objects.clone(),
            rows: self.columns.clone(),
            columns: self.rows.clone(),
            paths: None,
            object_index: self.attribute_index.clone(),
            attribute_index: self.object_index.clone(),
        }
    }

    /// Sub-context on the given objects (in the given order), keeping all attributes.
    pub fn restrict_objects(&self, objects: &[usize]) -> FormalContext {
        let names = objects.iter().map(|&g| self.objects[g].clone()).collect();
        let rows = objects.iter().map(|&g| self.rows[g].clone()).collect();
        let ctx = FormalContext::from_rows(names, self.attributes.clone(), rows)
            .expect("restriction of a valid context is valid");
        match &self.paths {
            Some(paths) => ctx
                .with_paths(objects.iter().map(|&g| paths[g].clone()).collect())
                .expect("one path per object"),
            None => ctx,
        }
    }

    pub fn to_json_value(&self) -> ContextJson {
        ContextJson {
            role: None,
            objects: self.objects.clone(),
            attributes: self.attributes.clone(),
            paths: self.paths.clone(),
            incidence: self
                .rows
                .iter()
                .map(|r| (0..self.n_attributes()).map(|j| r.contains(j) as u8).collect())
                .collect(),
        }
    }

    pub fn from_json_value(json: ContextJson) -> Result<Self> {
        let mut matrix = Vec::with_capacity(json.incidence.len());
        for (i, row) in json.incidence.iter().enumerate() {
            let mut bools = Vec::with_capacity(row.len());
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => bools.push(false),
                    1 => bools.push(true),
                    other => {
                        return Err(Error::Schema {
                            path: format!("incidence[{i}][{j}]"),
                            message: format!("expected 0 or 1, got {other}"),
                        })
                    }
                }
            }
            matrix.push(bools);
        }
        let ctx = FormalContext::new(json.objects, json.attributes, &matrix)?;
        match json.paths {
            Some(p) => ctx.with_paths(p),
            None => Ok(ctx),
        }
    }

    pub fn to_json(&self) -> String {
        write_context_json(&self.to_json_value())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_json_value(crate::ingest::from_json_str(text)?)
    }
}

fn index_names(names: &[String]) -> std::result::Result<HashMap<String, usize>, String> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(n.clone());
        }
    }
    Ok(index)
}

/// Wire form of a context: row `i`, column `j` is 1 iff object `i` has attribute `j`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ContextJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub role: Option<String>,
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paths: Option<Vec<String>>,
    pub incidence: Vec<Vec<u8>>,
}

/// Pretty JSON with one incidence row per line.
pub(crate) fn write_context_json(json: &ContextJson) -> String {
    use std::fmt::Write;

    let s = |v: &str| serde_json::to_string(v).expect("string serializes");
    let list = |v: &[String]| serde_json::to_string(v).expect("strings serialize");
    let mut out = String::from("{\n");
    if let Some(role) = &json.role {
        writeln!(out, "  \"role\": {},", s(role)).unwrap();
    }
    writeln!(out, "  \"objects\": {},", list(&json.objects)).unwrap();
    writeln!(out, "  \"attributes\": {},", list(&json.attributes)).unwrap();
    if let Some(paths) = &json.paths {
        writeln!(out, "  \"paths\": {},", list(paths)).unwrap();
    }
    out.push_str("  \"incidence\": [");
    for (i, row) in json.incidence.iter().enumerate() {
        out.push_str(if i == 0 { "\n    " } else { ",\n    " });
        out.push_str(&serde_json::to_string(row).expect("row serializes"));
    }
    if !json.incidence.is_empty() {
        out.push_str("\n  ");
    }
    out.push_str("]\n}\n");
    out
}

/// A formal concept `(extent, intent)` together with its support.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalConcept {
    pub extent: BitSet,
    pub intent: BitSet,
    /// `|extent| / |G|`, taken as 1 for the lone concept of an object-free context.
    pub support: f64,
}

impl FormalConcept {
    pub fn new(extent: BitSet, intent: BitSet, n_objects: usize) -> Self {
        let support = if n_objects == 0 {
            1.0
        } else {
            extent.len() as f64 / n_objects as f64
        };
        FormalConcept {
            extent,
            intent,
            support,
        }
    }

    /// `self ≤ other` in the concept order.
    pub fn le(&self, other: &FormalConcept) -> bool {
        self.extent.is_subset(&other.extent)
    }
}

/// Concepts in canonical order together with their cover relation.
#[derive(Clone, Debug, PartialEq)]
pub struct ConceptSet {
    objects: Vec<String>,
    attributes: Vec<String>,
    concepts: Vec<FormalConcept>,
    covers: Vec<(usize, usize)>,
}

impl ConceptSet {
    /// Sorts the concepts canonically and computes covers.
    pub fn new(context: &FormalContext, concepts: Vec<FormalConcept>) -> Result<Self> {
        Self::from_parts(context.objects().to_vec(), context.attributes().to_vec(), concepts)
    }

    pub fn from_parts(objects: Vec<String>, attributes: Vec<String>, mut concepts: Vec<FormalConcept>) -> Result<Self> {
        sort_canonical(&mut concepts);
        let covers = cover_relation(&concepts)?;
        Ok(ConceptSet {
            objects,
            attributes,
            concepts,
            covers,
        })
    }

    /// Assembles a set whose order and covers are already known; used by deserialization.
    pub(crate) fn from_raw(
        objects: Vec<String>,
        attributes: Vec<String>,
        concepts: Vec<FormalConcept>,
        covers: Vec<(usize, usize)>,
    ) -> Self {
        ConceptSet {
            objects,
            attributes,
            concepts,
            covers,
        }
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn concepts(&self) -> &[FormalConcept] {
        &self.concepts
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn extent_names(&self, i: usize) -> Vec<String> {
        self.concepts[i]
            .extent
            .iter()
            .map(|g| self.objects[g].clone())
            .collect()
    }

    pub fn intent_names(&self, i: usize) -> Vec<String> {
        self.concepts[i]
            .intent
            .iter()
            .map(|m| self.attributes[m].clone())
            .collect()
    }

    /// Index of the concept with the given intent, if present.
    pub fn find_intent(&self, intent: &BitSet) -> Option<usize> {
        self.concepts.iter().position(|c| &c.intent == intent)
    }

    /// Keeps only the concepts selected by `keep`, recomputing covers.
    pub fn filter(&self, keep: impl Fn(&FormalConcept) -> bool) -> ConceptSet {
        let concepts = self.concepts.iter().filter(|c| keep(c)).cloned().collect();
        ConceptSet::from_parts(self.objects.clone(), self.attributes.clone(), concepts)
            .expect("subset of distinct concepts stays distinct")
    }
}

/// Sort by extent size descending, then by intent as an ascending index sequence.
pub fn sort_canonical(concepts: &mut [FormalConcept]) {
    concepts.sort_by(|a, b| {
        b.extent
            .len()
            .cmp(&a.extent.len())
            .then_with(|| a.intent.cmp_lex(&b.intent))
    });
}

/// Transitive reduction of the extent-inclusion order.
///
/// Returns `(parent, child)` index pairs sorted ascending.
pub fn cover_relation(concepts: &[FormalConcept]) -> Result<Vec<(usize, usize)>> {
    let mut seen: HashMap<&BitSet, usize> = HashMap::with_capacity(concepts.len());
    for (i, c) in concepts.iter().enumerate() {
        if let Some(j) = seen.insert(&c.extent, i) {
            return Err(Error::DuplicateExtent(j, i));
        }
    }

    let mut by_size: Vec<usize> = (0..concepts.len()).collect();
    by_size.sort_by_key(|&i| concepts[i].extent.len());

    let mut covers: Vec<(usize, usize)> = (0..concepts.len())
        .into_par_iter()
        .flat_map_iter(|child| {
            let below = &concepts[child].extent;
            let mut parents: Vec<usize> = Vec::new();
            // Ascending extent size: a non-minimal upper bound always has a
            // minimal one below it that was already accepted.
            for &p in &by_size {
                let upper = &concepts[p].extent;
                if upper.len() <= below.len() || !below.is_subset(upper) {
                    continue;
                }
                if parents.iter().all(|&q| !concepts[q].extent.is_subset(upper)) {
                    parents.push(p);
                }
            }
            parents.into_iter().map(move |p| (p, child))
        })
        .collect();
    covers.sort_unstable();
    Ok(covers)
}

/// All concepts of `context`, refusing contexts with more than
/// [`DEFAULT_ENUMERATION_LIMIT`] attributes.
pub fn enumerate_concepts(context: &FormalContext) -> Result<ConceptSet> {
    enumerate_concepts_with_limit(context, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_concepts_with_limit(context: &FormalContext, limit: usize) -> Result<ConceptSet> {
    if context.n_attributes() > limit {
        return Err(Error::TooLarge {
            attributes: context.n_attributes(),
            limit,
        });
    }
    let n = context.n_objects();
    let concepts = next_closure_intents(context)
        .into_iter()
        .map(|intent| FormalConcept::new(context.extent_of(&intent), intent, n))
        .collect();
    ConceptSet::new(context, concepts)
}

/// Full lattice, enumerating over whichever side of the context is smaller.
///
/// The limit applies to that smaller side, so a context with few objects and
/// many attributes (the usual directory × topic shape) is still accepted.
pub fn enumerate_concepts_either_side(context: &FormalContext, limit: usize) -> Result<ConceptSet> {
    if context.n_attributes() <= context.n_objects() || context.n_objects() > limit {
        return enumerate_concepts_with_limit(context, limit);
    }
    let dual = context.transpose();
    let n = context.n_objects();
    let concepts = next_closure_intents(&dual)
        .into_iter()
        .map(|extent| FormalConcept::new(extent.clone(), context.intent_of(&extent), n))
        .collect();
    ConceptSet::new(context, concepts)
}

/// Closed attribute sets in lectic order.
fn next_closure_intents(context: &FormalContext) -> Vec<BitSet> {
    let m = context.n_attributes();
    let mut out = Vec::new();
    let mut current = context.closure_of(&BitSet::empty(m));
    loop {
        out.push(current.clone());
        match next_closed(context, &current) {
            Some(next) => current = next,
            None => return out,
        }
    }
}

fn next_closed(context: &FormalContext, current: &BitSet) -> Option<BitSet> {
    let mut prefix = current.clone();
    for i in (0..context.n_attributes()).rev() {
        if prefix.contains(i) {
            prefix.remove(i);
            continue;
        }
        let mut candidate = prefix.clone();
        candidate.insert(i);
        let closed = context.closure_of(&candidate);
        if closed.agrees_below(current, i) {
            return Some(closed);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    pub(crate) fn k2() -> FormalContext {
        FormalContext::new(names("g", 2), names("m", 2), &[vec![true, true], vec![true, false]]).unwrap()
    }

    fn contranominal(n: usize) -> FormalContext {
        let rows: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i != j).collect()).collect();
        FormalContext::new(names("g", n), names("m", n), &rows).unwrap()
    }

    #[test]
    fn derive_intent_examples() {
        let k = k2();
        let none: [&str; 0] = [];
        assert_eq!(k.derive_intent(&none).unwrap(), vec!["m1", "m2"]);
        assert_eq!(k.derive_intent(&["g1", "g2"]).unwrap(), vec!["m1"]);
        assert_eq!(k.derive_intent(&["g1"]).unwrap(), vec!["m1", "m2"]);
        let err = k.derive_intent(&["g9"]).unwrap_err();
        assert!(err.to_string().contains("g9"));
    }

    #[test]
    fn derive_extent_examples() {
        let k = k2();
        let none: [&str; 0] = [];
        assert_eq!(k.derive_extent(&none).unwrap(), vec!["g1", "g2"]);
        assert_eq!(k.derive_extent(&["m1"]).unwrap(), vec!["g1", "g2"]);
        assert_eq!(k.derive_extent(&["m1", "m2"]).unwrap(), vec!["g1"]);
        assert!(matches!(
            k.derive_extent(&["m7"]),
            Err(Error::UnknownAttribute(m)) if m == "m7"
        ));
    }

    #[test]
    fn closure_examples() {
        let k = k2();
        let none: [&str; 0] = [];
        assert_eq!(k.closure(&none).unwrap(), vec!["m1"]);
        assert_eq!(k.closure(&["m2"]).unwrap(), vec!["m1", "m2"]);
        assert_eq!(k.closure(&["m1", "m2"]).unwrap(), vec!["m1", "m2"]);
    }

    #[test]
    fn support_examples() {
        let k = k2();
        let none: [&str; 0] = [];
        assert_eq!(k.support(&none).unwrap(), 1.0);
        assert_eq!(k.support(&["m1"]).unwrap(), 1.0);
        assert_eq!(k.support(&["m1", "m2"]).unwrap(), 0.5);
        let empty = FormalContext::new(vec![], names("m", 2), &[]).unwrap();
        assert!(matches!(empty.support(&["m1"]), Err(Error::EmptyObjects)));
    }

    #[test]
    fn enumerate_k2() {
        let cs = enumerate_concepts(&k2()).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs.extent_names(0), vec!["g1", "g2"]);
        assert_eq!(cs.intent_names(0), vec!["m1"]);
        assert_eq!(cs.extent_names(1), vec!["g1"]);
        assert_eq!(cs.intent_names(1), vec!["m1", "m2"]);
        assert_eq!(cs.covers(), &[(0, 1)]);
    }

    #[test]
    fn enumerate_contranominal_three() {
        let cs = enumerate_concepts(&contranominal(3)).unwrap();
        assert_eq!(cs.len(), 8);
        assert_eq!(cs.covers().len(), 12);
    }

    #[test]
    fn enumerate_single_cell() {
        let ctx = FormalContext::new(names("g", 1), names("m", 1), &[vec![true]]).unwrap();
        let cs = enumerate_concepts(&ctx).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs.extent_names(0), vec!["g1"]);
        assert_eq!(cs.intent_names(0), vec!["m1"]);
        assert!(cs.covers().is_empty());
    }

    #[test]
    fn empty_contexts() {
        let no_attrs = FormalContext::new(names("g", 3), vec![], &[vec![], vec![], vec![]]).unwrap();
        let cs = enumerate_concepts(&no_attrs).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs.concepts()[0].extent.len(), 3);
        assert!(cs.concepts()[0].intent.is_empty());

        let no_objs = FormalContext::new(vec![], names("m", 2), &[]).unwrap();
        let cs = enumerate_concepts(&no_objs).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs.intent_names(0), vec!["m1", "m2"]);
        assert_eq!(cs.concepts()[0].support, 1.0);
    }

    #[test]
    fn size_guard() {
        let ctx = FormalContext::new(names("g", 1), names("m", 26), &[vec![false; 26]]).unwrap();
        let err = enumerate_concepts(&ctx).unwrap_err();
        assert!(err.to_string().contains("too large for exact enumeration"));
        assert!(enumerate_concepts_with_limit(&ctx, 30).is_ok());
        // one object: the dual side is tiny
        let cs = enumerate_concepts_either_side(&ctx, DEFAULT_ENUMERATION_LIMIT).unwrap();
        assert_eq!(cs.len(), 2);
    }

    #[test]
    fn either_side_matches_direct() {
        let rows: Vec<Vec<bool>> = (0..3).map(|i| (0..7).map(|j| (i * 7 + j) % 3 != 0).collect()).collect();
        let ctx = FormalContext::new(names("g", 3), names("m", 7), &rows).unwrap();
        assert_eq!(
            enumerate_concepts(&ctx).unwrap(),
            enumerate_concepts_either_side(&ctx, 25).unwrap()
        );
    }

    #[test]
    fn cover_relation_edge_cases() {
        let single = vec![FormalConcept::new(BitSet::full(2), BitSet::empty(1), 2)];
        assert!(cover_relation(&single).unwrap().is_empty());
        let dup = vec![single[0].clone(), single[0].clone()];
        assert!(matches!(cover_relation(&dup), Err(Error::DuplicateExtent(0, 1))));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            FormalContext::new(vec!["a".into(), "a".into()], vec![], &[vec![], vec![]]),
            Err(Error::DuplicateObject(_))
        ));
        assert!(matches!(
            FormalContext::new(vec!["a".into()], vec!["m".into(), "m".into()], &[vec![true, true]]),
            Err(Error::DuplicateAttribute(_))
        ));
        assert!(matches!(
            FormalContext::new(vec!["a".into()], vec!["m".into()], &[vec![true, false]]),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn duplicate_rows_allowed() {
        let ctx = FormalContext::new(names("g", 2), names("m", 1), &[vec![true], vec![true]]).unwrap();
        assert_eq!(enumerate_concepts(&ctx).unwrap().len(), 1);
    }

    #[test]
    fn json_round_trip() {
        let ctx = k2().with_paths(vec!["A/x".into(), "B/y".into()]).unwrap();
        let text = ctx.to_json();
        let back = FormalContext::from_json(&text).unwrap();
        assert_eq!(back, ctx);
        assert_eq!(back.to_json(), text);
        assert!(text.contains("[1,1]"));
    }

    #[test]
    fn json_rejects_non_binary() {
        let text = r#"{"objects":["g"],"attributes":["m"],"incidence":[[2]]}"#;
        let err = FormalContext::from_json(text).unwrap_err();
        assert!(err.to_string().contains("incidence[0][0]"));
    }
}
