//! Frequent concepts of a random context, with per-level search statistics.

use fatcat::{iceberg_concepts, FormalContext, Rate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> fatcat::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (g, m) = (2000, 16);
    let rows: Vec<Vec<bool>> = (0..g)
        .map(|_| (0..m).map(|j| rng.gen_bool(0.15 + j as f64 / 40.0)).collect())
        .collect();
    let ctx = FormalContext::new(
        (0..g).map(|i| format!("g{i}")).collect(),
        (0..m).map(|j| format!("m{j}")).collect(),
        &rows,
    )?;

    for minsupp in ["0.3", "0.2", "1/10"] {
        let rate: Rate = minsupp.parse()?;
        let ice = iceberg_concepts(&ctx, rate)?;
        println!(
            "minsupp {minsupp}: {} concepts, {} covers",
            ice.concepts.len(),
            ice.concepts.covers().len()
        );
        for level in &ice.stats.levels {
            println!(
                "  k={:<2} candidates {:>4}  keys {:>4}  bound {}",
                level.size, level.candidates, level.frequent_keys, level.frontier_bound
            );
        }
    }
    Ok(())
}
