use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fatcat::aggregate::{directory_topic_context, split_by_directory, DirectoryTopicContext};
use fatcat::export::{reduced_labels, to_dot, to_json, DEFAULT_WORDS_PER_TOPIC};
use fatcat::ingest::WeightsFile;
use fatcat::pipeline::{run_pipeline, PipelineConfig};
use fatcat::{
    binarize, directory_lattice, generate_synthetic, iceberg_concepts, row_normalize, select_threshold, Error,
    FormalContext, Rate, Result, SyntheticConfig,
};

/// Directory-level topic lattices from document-topic weights.
#[derive(Parser)]
#[command(name = "fatcat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded synthetic weights file.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        n_dirs: usize,
        #[arg(long, default_value_t = 50)]
        docs_per_dir: usize,
        #[arg(long, default_value_t = 20)]
        n_topics: usize,
        #[arg(long, default_value_t = 10)]
        topics_per_doc: usize,
        #[arg(long, default_value_t = 10)]
        words_per_topic: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Row-normalize weights and report the selected threshold.
    Threshold {
        #[command(flatten)]
        input: WeightsInput,
        #[arg(long, default_value_t = 0.1)]
        target_density: f64,
    },
    /// Binarize weights into a document × topic context.
    Binarize {
        #[command(flatten)]
        input: WeightsInput,
        #[arg(long, default_value_t = 0.1)]
        target_density: f64,
        /// Use this cut-off instead of selecting one by density.
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, default_value_t = 1)]
        directory_depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Iceberg lattice of a context.
    Iceberg {
        #[arg(long)]
        context: PathBuf,
        #[arg(long, default_value = "0.1")]
        minsupp: Rate,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Directory × topic context from a document × topic context with paths.
    Aggregate {
        #[arg(long)]
        context: PathBuf,
        #[arg(long, default_value = "0.1")]
        minsupp_directory: Rate,
        #[arg(long, default_value_t = 1)]
        directory_depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Concept lattice of a (directory × topic) context as JSON and DOT.
    Lattice {
        #[arg(long)]
        context: PathBuf,
        /// Draw the iceberg at this support instead of the full lattice.
        #[arg(long)]
        minsupp_final: Option<Rate>,
        /// Weights file whose topic words fill the DOT legend.
        #[arg(long)]
        topics: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_WORDS_PER_TOPIC)]
        words_per_topic: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run every stage and write all artifacts.
    Pipeline {
        #[command(flatten)]
        input: WeightsInput,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        target_density: f64,
        #[arg(long, default_value = "0.1")]
        minsupp_directory: Rate,
        #[arg(long)]
        minsupp_final: Option<Rate>,
        #[arg(long, default_value_t = 1)]
        directory_depth: usize,
        #[arg(long, default_value_t = DEFAULT_WORDS_PER_TOPIC)]
        words_per_topic: usize,
    },
}

#[derive(Args)]
struct WeightsInput {
    /// Weights JSON, or CSV (`doc,path,topic,weight`) when the name ends in `.csv`.
    #[arg(long)]
    weights: PathBuf,
}

impl WeightsInput {
    fn load(&self) -> Result<WeightsFile> {
        load_weights(&self.weights)
    }
}

fn load_weights(path: &Path) -> Result<WeightsFile> {
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        let file = std::fs::File::open(path).map_err(|e| io_err(path, e))?;
        WeightsFile::from_csv(file)
    } else {
        WeightsFile::from_json(&read(path)?)
    }
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn emit(out: Option<&Path>, body: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(|e| io_err(path, e)),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen {
            seed,
            n_dirs,
            docs_per_dir,
            n_topics,
            topics_per_doc,
            words_per_topic,
            out,
        } => {
            let cfg = SyntheticConfig {
                seed,
                n_dirs,
                docs_per_dir,
                n_topics,
                topics_per_doc,
                words_per_topic,
            };
            emit(out.as_deref(), &generate_synthetic(&cfg)?.to_json())
        }
        Command::Threshold { input, target_density } => {
            let parsed = input.load()?.validate()?;
            let report = select_threshold(&row_normalize(&parsed.matrix), target_density)?;
            emit(None, &pretty(&report))
        }
        Command::Binarize {
            input,
            target_density,
            delta,
            directory_depth,
            out,
        } => {
            let parsed = input.load()?.validate()?;
            let normalized = row_normalize(&parsed.matrix);
            let delta = match delta {
                Some(d) => d,
                None => {
                    let report = select_threshold(&normalized, target_density)?;
                    log::info!("selected delta {} at density {}", report.delta, report.achieved_density);
                    report.delta
                }
            };
            let ctx = binarize(&normalized, delta, directory_depth)?;
            emit(out.as_deref(), &ctx.to_json())
        }
        Command::Iceberg { context, minsupp, out } => {
            let ctx = FormalContext::from_json(&read(&context)?)?;
            let ice = iceberg_concepts(&ctx, minsupp)?;
            let labeled = reduced_labels(&ice.concepts, &ctx).with_minsupp(minsupp);
            emit(out.as_deref(), &to_json(&labeled))
        }
        Command::Aggregate {
            context,
            minsupp_directory,
            directory_depth,
            out,
        } => {
            let ctx = FormalContext::from_json(&read(&context)?)?;
            let subs = split_by_directory(&ctx, directory_depth)?;
            let dtc = directory_topic_context(&subs, minsupp_directory)?;
            emit(out.as_deref(), &dtc.to_json())
        }
        Command::Lattice {
            context,
            minsupp_final,
            topics,
            words_per_topic,
            json,
            dot,
        } => {
            let text = read(&context)?;
            let dtc = match DirectoryTopicContext::from_json(&text) {
                Ok(dtc) => dtc,
                Err(_) => DirectoryTopicContext::new(FormalContext::from_json(&text)?),
            };
            let cs = directory_lattice(&dtc, minsupp_final)?;
            let mut labeled = reduced_labels(&cs, dtc.context());
            labeled.minsupp = minsupp_final;
            let topic_words = match topics {
                Some(path) => Some(load_weights(&path)?.validate()?.topics),
                None => None,
            };
            let dot_text = to_dot(&labeled, topic_words.as_ref(), words_per_topic);
            let json_text = to_json(&labeled);
            match (json.as_deref(), dot.as_deref()) {
                (None, None) => emit(None, &json_text),
                (j, d) => {
                    if let Some(j) = j {
                        emit(Some(j), &json_text)?;
                    }
                    if let Some(d) = d {
                        emit(Some(d), &dot_text)?;
                    }
                    Ok(())
                }
            }
        }
        Command::Pipeline {
            input,
            out_dir,
            target_density,
            minsupp_directory,
            minsupp_final,
            directory_depth,
            words_per_topic,
        } => {
            let cfg = PipelineConfig {
                target_density,
                minsupp_directory,
                minsupp_final,
                directory_depth,
                words_per_topic,
            };
            let weights = input.load().map_err(|e| Error::Stage {
                stage: "ingest",
                source: Box::new(e),
            })?;
            let output = run_pipeline(&weights, &cfg)?;
            for path in output.write_artifacts(&out_dir)? {
                log::info!("wrote {}", path.display());
            }
            eprintln!(
                "delta {} (density {:.4}), {} directories, {} concepts -> {}",
                output.threshold_report.delta,
                output.threshold_report.achieved_density,
                output.manifest.directories.len(),
                output.final_lattice.concepts.len(),
                out_dir.display()
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("FATCAT_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
