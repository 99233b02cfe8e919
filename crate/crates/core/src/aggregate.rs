//! Per-directory icebergs and the directory × topic context built from them.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::context::{
    enumerate_concepts_either_side, write_context_json, ConceptSet, ContextJson, FormalContext,
    DEFAULT_ENUMERATION_LIMIT,
};
use crate::error::{Error, Result};
use crate::iceberg::{iceberg_concepts, IcebergLattice};
use crate::rate::Rate;
use crate::threshold::directory_of;

pub type DirectoryId = String;

/// Groups objects by the first `depth` directory components of their path.
///
/// Every sub-context keeps the full attribute list in the global order.
pub fn split_by_directory(context: &FormalContext, depth: usize) -> Result<BTreeMap<DirectoryId, FormalContext>> {
    if depth == 0 {
        return Err(Error::InvalidDepth);
    }
    let paths = context
        .paths()
        .ok_or_else(|| Error::MissingPath(context.objects().first().cloned().unwrap_or_default()))?;
    let mut groups: BTreeMap<DirectoryId, Vec<usize>> = BTreeMap::new();
    for (g, path) in paths.iter().enumerate() {
        let dir = directory_of(path, depth).map_err(|err| match err {
            Error::MissingPath(_) => Error::MissingPath(context.objects()[g].clone()),
            other => other,
        })?;
        groups.entry(dir).or_default().push(g);
    }
    Ok(groups
        .into_iter()
        .map(|(dir, members)| (dir, context.restrict_objects(&members)))
        .collect())
}

/// Iceberg lattice of every directory, computed independently.
pub fn directory_icebergs(
    subcontexts: &BTreeMap<DirectoryId, FormalContext>,
    minsupp: Rate,
) -> Result<BTreeMap<DirectoryId, IcebergLattice>> {
    let results: Vec<(DirectoryId, Result<IcebergLattice>)> = subcontexts
        .par_iter()
        .map(|(dir, ctx)| (dir.clone(), iceberg_concepts(ctx, minsupp)))
        .collect();
    results
        .into_iter()
        .map(|(dir, res)| match res {
            Ok(ice) => Ok((dir, ice)),
            Err(source) => Err(Error::Directory {
                directory: dir,
                source: Box::new(source),
            }),
        })
        .collect()
}

/// Topics occurring in the intent of at least one frequent concept that
/// covers some document.
///
/// The empty-extent bottom concept is skipped: at `minsupp = 0` it is
/// frequent and its intent holds every topic, including ones no document has.
pub fn topics_in_frequent_intents(iceberg: &IcebergLattice) -> BitSet {
    let m = iceberg.concepts.attributes().len();
    iceberg
        .concepts
        .concepts()
        .iter()
        .filter(|c| !c.extent.is_empty())
        .fold(BitSet::empty(m), |acc, c| acc.union(&c.intent))
}

/// Topics `t` held by at least one document with `supp({t}) >= minsupp`.
pub fn frequent_singletons(context: &FormalContext, minsupp: Rate) -> BitSet {
    let n = context.n_objects();
    BitSet::from_indices(
        context.n_attributes(),
        (0..context.n_attributes()).filter(|&m| {
            let count = context.column(m).len();
            count > 0 && minsupp.is_met_by(count, n)
        }),
    )
}

/// Binary directory × topic incidence.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectoryTopicContext {
    context: FormalContext,
}

impl DirectoryTopicContext {
    pub const ROLE: &'static str = "directory-topic";

    /// Wraps a context whose objects are directories and attributes are topics.
    pub fn new(context: FormalContext) -> Self {
        DirectoryTopicContext { context }
    }

    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    pub fn directories(&self) -> &[String] {
        self.context.objects()
    }

    pub fn topics(&self) -> &[String] {
        self.context.attributes()
    }

    pub fn to_json(&self) -> String {
        let mut json = self.context.to_json_value();
        json.role = Some(Self::ROLE.to_string());
        write_context_json(&json)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let json: ContextJson = crate::ingest::from_json_str(text)?;
        if json.role.as_deref() != Some(Self::ROLE) {
            return Err(Error::Schema {
                path: "role".into(),
                message: format!("expected \"{}\"", Self::ROLE),
            });
        }
        Ok(DirectoryTopicContext {
            context: FormalContext::from_json_value(json)?,
        })
    }
}

/// Builds the directory × topic context from already computed icebergs:
/// a topic is present for a directory iff it occurs in some frequent intent
/// (see [`topics_in_frequent_intents`]).
pub fn directory_topic_context_from_icebergs(
    icebergs: &BTreeMap<DirectoryId, IcebergLattice>,
    topics: &[String],
) -> Result<DirectoryTopicContext> {
    let directories: Vec<String> = icebergs.keys().cloned().collect();
    let rows = icebergs.values().map(topics_in_frequent_intents).collect();
    Ok(DirectoryTopicContext::new(FormalContext::from_rows(
        directories,
        topics.to_vec(),
        rows,
    )?))
}

pub fn directory_topic_context(
    subcontexts: &BTreeMap<DirectoryId, FormalContext>,
    minsupp: Rate,
) -> Result<DirectoryTopicContext> {
    let topics = match subcontexts.values().next() {
        Some(ctx) => ctx.attributes().to_vec(),
        None => Vec::new(),
    };
    if let Some((dir, _)) = subcontexts.iter().find(|(_, c)| c.attributes() != topics.as_slice()) {
        return Err(Error::Directory {
            directory: dir.clone(),
            source: Box::new(Error::Shape("topic columns differ between directories".into())),
        });
    }
    let icebergs = directory_icebergs(subcontexts, minsupp)?;
    directory_topic_context_from_icebergs(&icebergs, &topics)
}

/// Concept lattice of the directory × topic context: the full lattice when
/// `minsupp` is `None`, otherwise its iceberg.
pub fn directory_lattice(dtc: &DirectoryTopicContext, minsupp: Option<Rate>) -> Result<ConceptSet> {
    let ctx = dtc.context();
    if ctx.n_objects() == 0 {
        return Err(Error::EmptyObjects);
    }
    match minsupp {
        Some(rate) => Ok(iceberg_concepts(ctx, rate)?.concepts),
        None => enumerate_concepts_either_side(ctx, DEFAULT_ENUMERATION_LIMIT),
    }
}
