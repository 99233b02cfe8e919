//! Per-directory icebergs collapsed into a directory × topic context.

use fatcat::aggregate::directory_icebergs;
use fatcat::{binarize, directory_topic_context, generate_synthetic, select_threshold, split_by_directory};
use fatcat::{row_normalize, Rate, SyntheticConfig};

fn main() -> fatcat::Result<()> {
    let cfg = SyntheticConfig {
        n_dirs: 4,
        docs_per_dir: 30,
        n_topics: 12,
        ..SyntheticConfig::default()
    };
    let parsed = generate_synthetic(&cfg)?.validate()?;
    let normalized = row_normalize(&parsed.matrix);
    let report = select_threshold(&normalized, 0.1)?;
    let ctx = binarize(&normalized, report.delta, 1)?;

    let subs = split_by_directory(&ctx, 1)?;
    let minsupp: Rate = "0.2".parse()?;
    for (dir, ice) in directory_icebergs(&subs, minsupp)? {
        println!(
            "{dir}: {} documents, {} frequent concepts",
            subs[&dir].n_objects(),
            ice.concepts.len()
        );
    }

    let dtc = directory_topic_context(&subs, minsupp)?;
    print!("{}", dtc.to_json());
    Ok(())
}
