//! Row normalization, density-driven threshold selection and binarization.

use fatcat::threshold::Document;
use fatcat::{binarize, density, row_normalize, select_threshold, WeightedDocTopicMatrix};

fn main() -> fatcat::Result<()> {
    let documents = ["a/1.txt", "a/2.txt", "b/3.txt", "b/4.txt"]
        .iter()
        .enumerate()
        .map(|(i, p)| Document {
            id: format!("doc{i}"),
            path: p.to_string(),
        })
        .collect();
    let weights = WeightedDocTopicMatrix::from_dense(
        documents,
        vec![10, 11, 12],
        &[
            vec![7.0, 2.0, 1.0],
            vec![6.0, 4.0, 0.0],
            vec![1.0, 1.0, 8.0],
            vec![0.0, 5.0, 5.0],
        ],
    )?;
    let normalized = row_normalize(&weights);

    for target in [0.5, 0.25, 0.1] {
        let report = select_threshold(&normalized, target)?;
        println!("{}", serde_json::to_string(&report).expect("serializable"));
    }

    let report = select_threshold(&normalized, 0.25)?;
    println!("density at 0.5: {}", density(&normalized, 0.5)?);
    let ctx = binarize(&normalized, report.delta, 1)?;
    print!("{}", ctx.to_json());
    Ok(())
}
