//! Topic aggregation over directory trees with formal concept analysis.
//!
//! A topic model assigns each document weights over topics. This crate turns
//! those weights into a binary document × topic context by row normalization
//! and a density-driven cut-off, computes an iceberg concept lattice for
//! every directory, collects the topics of each directory's frequent concepts
//! into a directory × topic context, and draws the concept lattice of that
//! context as DOT and JSON.
//!
//! The pieces are usable on their own:
//!
//! - [`context`]: formal contexts, derivation operators, exact enumeration.
//! - [`iceberg`]: frequent concepts by level-wise key-set search.
//! - [`threshold`]: weight matrices, normalization, threshold selection.
//! - [`aggregate`]: per-directory icebergs and the directory × topic context.
//! - [`export`]: reduced labeling, ID-range compression, DOT and JSON.
//! - [`ingest`]: weights file format, CSV import, synthetic corpora.
//! - [`pipeline`]: the whole chain with an artifact manifest.
//!
//! ```
//! use fatcat::{enumerate_concepts, FormalContext};
//!
//! let ctx = FormalContext::new(
//!     vec!["g1".into(), "g2".into()],
//!     vec!["m1".into(), "m2".into()],
//!     &[vec![true, true], vec![true, false]],
//! )?;
//! assert_eq!(ctx.closure(&["m2"])?, vec!["m1", "m2"]);
//! assert_eq!(enumerate_concepts(&ctx)?.len(), 2);
//! # Ok::<(), fatcat::Error>(())
//! ```

pub mod aggregate;
pub mod bitset;
pub mod context;
pub mod error;
pub mod export;
pub mod iceberg;
pub mod ingest;
pub mod pipeline;
pub mod rate;
pub mod threshold;

pub use aggregate::{
    directory_lattice, directory_topic_context, split_by_directory, DirectoryId, DirectoryTopicContext,
};
pub use bitset::BitSet;
pub use context::{
    cover_relation, enumerate_concepts, enumerate_concepts_with_limit, ConceptSet, FormalConcept, FormalContext,
};
pub use error::{Error, ErrorKind, Result};
pub use export::{compress_ranges, reduced_labels, to_dot, to_json, LabeledLattice, TopicInfo};
pub use iceberg::{iceberg_concepts, is_frequent, IcebergLattice};
pub use ingest::{generate_synthetic, parse_weights, SyntheticConfig, WeightsFile};
pub use pipeline::{run_pipeline, PipelineConfig, PipelineOutput};
pub use rate::Rate;
pub use threshold::{
    binarize, density, row_normalize, select_threshold, ThresholdReport, TopicId, WeightedDocTopicMatrix,
};
