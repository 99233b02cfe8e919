use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or inconsistent input data.
    Input,
    /// Input was well-formed but the requested computation is undefined or refused.
    Domain,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown object id `{0}`")]
    UnknownObject(String),
    #[error("unknown attribute id `{0}`")]
    UnknownAttribute(String),
    #[error("duplicate object id `{0}`")]
    DuplicateObject(String),
    #[error("duplicate attribute id `{0}`")]
    DuplicateAttribute(String),
    #[error("incidence shape mismatch: {0}")]
    Shape(String),
    #[error("support is undefined on a context without objects")]
    EmptyObjects,
    #[error("matrix has no documents or no topics")]
    EmptyMatrix,
    #[error("context too large for exact enumeration: {attributes} attributes exceeds limit {limit}")]
    TooLarge { attributes: usize, limit: usize },
    #[error("rate `{name}` must lie in {range}, got {value}")]
    InvalidRate {
        name: &'static str,
        value: String,
        range: &'static str,
    },
    #[error("duplicate concept extent at indices {0} and {1}")]
    DuplicateExtent(usize, usize),
    #[error("negative or non-finite weight {weight} for document `{doc}`, topic {topic}")]
    InvalidWeight { doc: String, topic: u32, weight: f64 },
    #[error("duplicate weight entry for document `{doc}`, topic {topic}")]
    DuplicateEntry { doc: String, topic: u32 },
    #[error("weight entry references unknown document `{0}`")]
    DanglingDocument(String),
    #[error("weight entry references unknown topic {0}")]
    DanglingTopic(u32),
    #[error("duplicate document id `{0}`")]
    DuplicateDocument(String),
    #[error("duplicate topic id {0}")]
    DuplicateTopic(u32),
    #[error("topic {0}: {1}")]
    InvalidTopic(u32, String),
    #[error("object `{0}` has no path")]
    MissingPath(String),
    #[error("directory depth must be at least 1")]
    InvalidDepth,
    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),
    #[error("schema violation at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("csv: {0}")]
    Csv(String),
    #[error(
        "no threshold reaches target density {target}: the largest weight {max_weight} still leaves density {density}"
    )]
    UnreachableDensity { target: f64, max_weight: f64, density: f64 },
    #[error("directory `{directory}`: {source}")]
    Directory {
        directory: String,
        #[source]
        source: Box<Error>,
    },
    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::EmptyObjects | Error::EmptyMatrix | Error::TooLarge { .. } | Error::UnreachableDensity { .. } => {
                ErrorKind::Domain
            }
            Error::Directory { source, .. } => source.kind(),
            // Once input has been validated, any failure inside a stage is a pipeline error.
            Error::Stage { source, stage } => {
                if *stage == "ingest" {
                    source.kind()
                } else {
                    ErrorKind::Domain
                }
            }
            _ => ErrorKind::Input,
        }
    }

    /// Process exit code: 1 for input errors, 2 for pipeline/domain errors.
    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            ErrorKind::Input => 1,
            ErrorKind::Domain => 2,
        }
    }

    pub(crate) fn rate(name: &'static str, value: impl ToString, range: &'static str) -> Self {
        Error::InvalidRate {
            name,
            value: value.to_string(),
            range,
        }
    }

    pub(crate) fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
