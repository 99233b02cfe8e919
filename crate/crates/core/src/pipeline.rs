//! End-to-end run: weights → binary context → per-directory icebergs →
//! directory × topic context → labeled lattice → JSON / DOT artifacts.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::aggregate::{
    directory_icebergs, directory_lattice, directory_topic_context_from_icebergs, split_by_directory, DirectoryId,
    DirectoryTopicContext,
};
use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::export::{reduced_labels, to_dot, to_json, LabeledLattice, DEFAULT_WORDS_PER_TOPIC};
use crate::iceberg::IcebergLattice;
use crate::ingest::WeightsFile;
use crate::rate::Rate;
use crate::threshold::{binarize, row_normalize, select_threshold, ThresholdReport, DEFAULT_TARGET_DENSITY};

pub const MANIFEST_SCHEMA: &str = "fatcat-manifest/1";

/// Default minimum support for per-directory icebergs.
pub const DEFAULT_MINSUPP: f64 = 0.1;

pub const STAGES: [&str; 9] = [
    "ingest",
    "normalize",
    "threshold",
    "binarize",
    "split",
    "iceberg",
    "aggregate",
    "lattice",
    "export",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub target_density: f64,
    pub minsupp_directory: Rate,
    /// `None` draws the full lattice of the directory × topic context.
    pub minsupp_final: Option<Rate>,
    pub directory_depth: usize,
    pub words_per_topic: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            target_density: DEFAULT_TARGET_DENSITY,
            minsupp_directory: Rate::from_f64(DEFAULT_MINSUPP).expect("valid default"),
            minsupp_final: None,
            directory_depth: 1,
            words_per_topic: DEFAULT_WORDS_PER_TOPIC,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.target_density > 0.0 && self.target_density <= 1.0) {
            return Err(Error::rate("target_density", self.target_density, "(0, 1]"));
        }
        if self.directory_depth == 0 {
            return Err(Error::InvalidDepth);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectorySummary {
    pub id: DirectoryId,
    pub documents: usize,
    pub iceberg_concepts: usize,
    pub topics_present: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContextSummary {
    pub objects: usize,
    pub attributes: usize,
    pub incidences: usize,
    pub density: f64,
}

impl From<&FormalContext> for ContextSummary {
    fn from(ctx: &FormalContext) -> Self {
        ContextSummary {
            objects: ctx.n_objects(),
            attributes: ctx.n_attributes(),
            incidences: ctx.incidence_count(),
            density: ctx.density(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeSummary {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minsupp: Option<Rate>,
    pub concepts: usize,
    pub covers: usize,
}

/// Everything a run decided, minus wall-clock timings (kept separately so
/// that identical inputs give identical manifests).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: String,
    pub config: PipelineConfig,
    pub stages: Vec<String>,
    pub warnings: Vec<String>,
    pub threshold: ThresholdReport,
    pub document_topic_context: ContextSummary,
    pub directories: Vec<DirectorySummary>,
    pub directory_topic_context: ContextSummary,
    pub final_lattice: LatticeSummary,
    pub artifacts: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub millis: f64,
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub context: FormalContext,
    pub threshold_report: ThresholdReport,
    pub per_directory_icebergs: BTreeMap<DirectoryId, IcebergLattice>,
    pub directory_topic_context: DirectoryTopicContext,
    pub final_lattice: LabeledLattice,
    pub dot: String,
    pub json: String,
    pub manifest: Manifest,
    pub timings: Vec<StageTiming>,
}

pub const ARTIFACTS: [&str; 7] = [
    "context.json",
    "directory_icebergs.json",
    "directory_topic_context.json",
    "lattice.json",
    "lattice.dot",
    "manifest.json",
    "timings.json",
];

struct Timer {
    timings: Vec<StageTiming>,
    start: Instant,
}

impl Timer {
    fn new() -> Self {
        Timer {
            timings: Vec::new(),
            start: Instant::now(),
        }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.timings.push(StageTiming {
            stage: stage.to_string(),
            millis: (now - self.start).as_secs_f64() * 1e3,
        });
        log::info!("stage {stage} done in {:.2} ms", (now - self.start).as_secs_f64() * 1e3);
        self.start = now;
    }
}

pub fn run_pipeline(weights: &WeightsFile, cfg: &PipelineConfig) -> Result<PipelineOutput> {
    cfg.validate().map_err(|e| e.in_stage("ingest"))?;
    let mut timer = Timer::new();

    let parsed = weights.validate().map_err(|e| e.in_stage("ingest"))?;
    timer.lap("ingest");

    let normalized = row_normalize(&parsed.matrix);
    timer.lap("normalize");

    let report = select_threshold(&normalized, cfg.target_density).map_err(|e| e.in_stage("threshold"))?;
    if report.is_unreachable() {
        let max_weight = normalized.max_weight();
        let density = crate::threshold::density(&normalized, max_weight).map_err(|e| e.in_stage("threshold"))?;
        return Err(Error::UnreachableDensity {
            target: cfg.target_density,
            max_weight,
            density,
        }
        .in_stage("threshold"));
    }
    timer.lap("threshold");

    let context = binarize(&normalized, report.delta, cfg.directory_depth).map_err(|e| e.in_stage("binarize"))?;
    timer.lap("binarize");

    let subcontexts = split_by_directory(&context, cfg.directory_depth).map_err(|e| e.in_stage("split"))?;
    timer.lap("split");

    let icebergs = directory_icebergs(&subcontexts, cfg.minsupp_directory).map_err(|e| e.in_stage("iceberg"))?;
    timer.lap("iceberg");

    let dtc =
        directory_topic_context_from_icebergs(&icebergs, context.attributes()).map_err(|e| e.in_stage("aggregate"))?;
    timer.lap("aggregate");

    let lattice = directory_lattice(&dtc, cfg.minsupp_final).map_err(|e| e.in_stage("lattice"))?;
    let mut labeled = reduced_labels(&lattice, dtc.context());
    labeled.minsupp = cfg.minsupp_final;
    timer.lap("lattice");

    let dot = to_dot(&labeled, Some(&parsed.topics), cfg.words_per_topic);
    let json = to_json(&labeled);
    timer.lap("export");

    let directories = icebergs
        .iter()
        .zip(dtc.context().rows())
        .map(|((id, ice), row)| DirectorySummary {
            id: id.clone(),
            documents: subcontexts[id].n_objects(),
            iceberg_concepts: ice.len(),
            topics_present: row.len(),
        })
        .collect();
    let manifest = Manifest {
        schema: MANIFEST_SCHEMA.to_string(),
        config: cfg.clone(),
        stages: STAGES.iter().map(|s| s.to_string()).collect(),
        warnings: parsed.warnings,
        threshold: report.clone(),
        document_topic_context: ContextSummary::from(&context),
        directories,
        directory_topic_context: ContextSummary::from(dtc.context()),
        final_lattice: LatticeSummary {
            minsupp: cfg.minsupp_final,
            concepts: lattice.len(),
            covers: lattice.covers().len(),
        },
        artifacts: ARTIFACTS.iter().map(|s| s.to_string()).collect(),
    };

    Ok(PipelineOutput {
        context,
        threshold_report: report,
        per_directory_icebergs: icebergs,
        directory_topic_context: dtc,
        final_lattice: labeled,
        dot,
        json,
        manifest,
        timings: timer.timings,
    })
}

impl PipelineOutput {
    pub fn manifest_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.manifest).expect("manifest serializes");
        text.push('\n');
        text
    }

    /// Per-directory iceberg lattices keyed by directory, each in lattice JSON form.
    pub fn icebergs_json(&self) -> String {
        let map: serde_json::Map<String, serde_json::Value> = self
            .per_directory_icebergs
            .iter()
            .map(|(dir, ice)| {
                let sub = &self.context;
                let members: Vec<usize> = ice
                    .concepts
                    .objects()
                    .iter()
                    .map(|g| sub.object_id(g).expect("directory objects come from the context"))
                    .collect();
                let labeled = reduced_labels(&ice.concepts, &sub.restrict_objects(&members)).with_minsupp(ice.minsupp);
                let value = serde_json::from_str(&to_json(&labeled)).expect("lattice JSON parses");
                (dir.clone(), value)
            })
            .collect();
        let mut text = serde_json::to_string_pretty(&map).expect("map serializes");
        text.push('\n');
        text
    }

    /// Writes every artifact into `dir`, creating it if needed.
    pub fn write_artifacts(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let mut timings = serde_json::to_string_pretty(&self.timings).expect("timings serialize");
        timings.push('\n');
        let contents = [
            self.context.to_json(),
            self.icebergs_json(),
            self.directory_topic_context.to_json(),
            self.json.clone(),
            self.dot.clone(),
            self.manifest_json(),
            timings,
        ];
        let mut written = Vec::new();
        for (name, body) in ARTIFACTS.iter().zip(contents) {
            let path = dir.join(name);
            std::fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
            written.push(path);
        }
        Ok(written)
    }
}
