//! Derivation, closure and the full concept lattice of a small context.

use fatcat::{enumerate_concepts, FormalContext};

fn main() -> fatcat::Result<()> {
    let ctx = FormalContext::new(
        ["frog", "dog", "reed", "maize"].map(String::from).to_vec(),
        ["water", "land", "animal", "plant"].map(String::from).to_vec(),
        &[
            vec![true, true, true, false],
            vec![false, true, true, false],
            vec![true, false, false, true],
            vec![false, true, false, true],
        ],
    )?;

    println!("{{frog, dog}}' = {:?}", ctx.derive_intent(&["frog", "dog"])?);
    println!("{{water}}'' = {:?}", ctx.closure(&["water"])?);
    println!("supp({{land}}) = {}", ctx.support(&["land"])?);

    let lattice = enumerate_concepts(&ctx)?;
    println!("\n{} concepts:", lattice.len());
    for (i, c) in lattice.concepts().iter().enumerate() {
        println!(
            "  c{i}: {:?} x {:?}  supp {:.2}",
            lattice.extent_names(i),
            lattice.intent_names(i),
            c.support
        );
    }
    println!("covers: {:?}", lattice.covers());
    Ok(())
}
