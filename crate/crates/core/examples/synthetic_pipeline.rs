//! The whole chain on a seeded synthetic corpus, artifacts written to a
//! directory (first argument, default `fatcat-out`).

use fatcat::{generate_synthetic, run_pipeline, PipelineConfig, SyntheticConfig};

fn main() -> fatcat::Result<()> {
    let out_dir = std::env::args().nth(1).unwrap_or_else(|| "fatcat-out".into());
    let weights = generate_synthetic(&SyntheticConfig::default())?;
    let output = run_pipeline(&weights, &PipelineConfig::default())?;

    let report = &output.threshold_report;
    println!("delta {} gives density {:.4}", report.delta, report.achieved_density);
    for (dir, ice) in &output.per_directory_icebergs {
        println!("{dir}: {} frequent concepts", ice.concepts.len());
    }
    println!("final lattice: {} concepts", output.final_lattice.concepts.len());
    for path in output.write_artifacts(std::path::Path::new(&out_dir))? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
