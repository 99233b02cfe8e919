//! Acceptance checks, one line per criterion:
//! `cargo test -p fatcat --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{brute_covers, concept_pairs, cover_pairs, random_subset, random_weights, rng, Matrix};
use fatcat::aggregate::{frequent_singletons, topics_in_frequent_intents};
use fatcat::threshold::Document;
use fatcat::{
    binarize, density, enumerate_concepts, generate_synthetic, iceberg_concepts, reduced_labels, row_normalize,
    run_pipeline, select_threshold, FormalContext, PipelineConfig, Rate, SyntheticConfig, WeightedDocTopicMatrix,
};
use rand::Rng;

type Check = std::result::Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took <= limit, || format!("{what} took {took:.2?}, limit {limit:?}"))?;
    Ok(took)
}

fn galois_laws() -> Check {
    let start = Instant::now();
    let mut r = rng(1);
    for case in 0..1000 {
        let mx = Matrix::random(&mut r, 15, 15, 1);
        let ctx = mx.to_context();
        let (g, m) = (ctx.n_objects(), ctx.n_attributes());
        let (a, c) = (random_subset(&mut r, g), random_subset(&mut r, g));
        let (b, d) = (random_subset(&mut r, m), random_subset(&mut r, m));
        let a1 = ctx.intent_of(&a);
        let b1 = ctx.extent_of(&b);
        let laws = [
            a.is_subset(&ctx.extent_of(&a1)),
            b.is_subset(&ctx.closure_of(&b)),
            ctx.intent_of(&a).is_subset(&ctx.intent_of(&a.intersection(&c))),
            ctx.extent_of(&b).is_subset(&ctx.extent_of(&b.intersection(&d))),
            ctx.intent_of(&ctx.extent_of(&a1)) == a1,
            ctx.extent_of(&ctx.intent_of(&b1)) == b1,
            ctx.closure_of(&ctx.closure_of(&b)) == ctx.closure_of(&b),
            ctx.closure_of(&b).is_subset(&ctx.closure_of(&b.union(&d))),
            ctx.support_count(&b) >= ctx.support_count(&b.union(&d)),
        ];
        if let Some(law) = laws.iter().position(|ok| !ok) {
            return Err(format!("law {law} fails on case {case}"));
        }
    }
    let took = within(start, Duration::from_secs(10), "1000 contexts")?;
    Ok(format!("1000 contexts up to 15x15 in {took:.2?}"))
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut r = rng(2);
    let rates = [(0, 10), (1, 10), (3, 10), (5, 10), (10, 10)];
    for case in 0..200 {
        let mx = Matrix::random(&mut r, 40, 12, 1);
        let ctx = mx.to_context();
        let all = mx.all_concepts();
        let full = enumerate_concepts(&ctx).map_err(|e| e.to_string())?;
        ensure(concept_pairs(&full) == all, || {
            format!("enumeration differs on case {case}")
        })?;
        ensure(cover_pairs(&full) == brute_covers(&all), || {
            format!("covers differ on case {case}")
        })?;
        for (num, den) in rates {
            let ice = iceberg_concepts(&ctx, Rate::ratio(num, den).unwrap()).map_err(|e| e.to_string())?;
            let expected = mx.frequent_concepts(num, den);
            ensure(concept_pairs(&ice.concepts) == expected, || {
                format!("iceberg differs on case {case} at {num}/{den}")
            })?;
            ensure(cover_pairs(&ice.concepts) == brute_covers(&expected), || {
                format!("iceberg covers differ on case {case} at {num}/{den}")
            })?;
        }
    }
    let took = within(start, Duration::from_secs(60), "200 contexts")?;
    Ok(format!("200 contexts x 5 supports in {took:.2?}"))
}

fn contranominal_scales() -> Check {
    for n in 1..=10 {
        let ctx = Matrix::contranominal(n).to_context();
        let full = enumerate_concepts(&ctx).map_err(|e| e.to_string())?.len();
        ensure(full == 1 << n, || format!("n={n}: {full} concepts"))?;
        let rate = Rate::ratio(n as u64 - 1, n as u64).unwrap();
        let ice = iceberg_concepts(&ctx, rate).map_err(|e| e.to_string())?.concepts.len();
        ensure(ice == n + 1, || format!("n={n}: iceberg has {ice} concepts"))?;
    }
    Ok("n = 1..10: 2^n concepts, n+1 at minsupp (n-1)/n".into())
}

fn docs(n: usize) -> Vec<Document> {
    (0..n)
        .map(|i| Document {
            id: format!("d{i}"),
            path: format!("dir/d{i}.txt"),
        })
        .collect()
}

fn threshold_semantics() -> Check {
    let worked = WeightedDocTopicMatrix::from_dense(docs(2), vec![0, 1], &[vec![0.7, 0.3], vec![0.6, 0.4]])
        .map_err(|e| e.to_string())?;
    let report = select_threshold(&row_normalize(&worked), 0.25).map_err(|e| e.to_string())?;
    ensure(report.delta == 0.7 && report.achieved_density == 0.25, || {
        format!(
            "worked example gave delta {} density {}",
            report.delta, report.achieved_density
        )
    })?;

    let mut r = rng(4);
    for case in 0..300 {
        let (d, t) = (r.gen_range(1..15), r.gen_range(1..10));
        let m = WeightedDocTopicMatrix::from_dense(docs(d), (0..t as u32).collect(), &random_weights(&mut r, d, t))
            .map_err(|e| e.to_string())?;
        let m = row_normalize(&m);
        let target = r.gen_range(1..=20) as f64 / 20.0;
        let report = select_threshold(&m, target).map_err(|e| e.to_string())?;
        let mut weights: Vec<f64> = (0..d)
            .flat_map(|i| (0..t).map(move |j| (i, j)))
            .map(|(i, j)| m.weight(i, j))
            .collect();
        weights.sort_by(f64::total_cmp);
        weights.dedup();
        let dens = |delta| density(&m, delta).unwrap();
        for pair in weights.windows(2) {
            ensure(dens(pair[0]) >= dens(pair[1]), || {
                format!("density increases on case {case}")
            })?;
        }
        if report.is_unreachable() {
            ensure(dens(*weights.last().unwrap()) > target, || {
                format!("false unreachable on case {case}")
            })?;
            continue;
        }
        ensure(dens(report.delta) <= target, || {
            format!("density above target on case {case}")
        })?;
        ensure(
            weights.iter().filter(|&&w| w < report.delta).all(|&w| dens(w) > target),
            || format!("delta not minimal on case {case}"),
        )?;
        let ctx = binarize(&m, report.delta, 1).map_err(|e| e.to_string())?;
        ensure(ctx.density() <= target, || {
            format!("binarized density above target on case {case}")
        })?;
    }
    Ok("worked example delta 0.7; 300 random matrices minimal and monotone".into())
}

fn aggregation_equivalence() -> Check {
    let mut r = rng(5);
    for case in 0..100 {
        let mx = Matrix::random(&mut r, 30, 10, 1);
        let ctx = mx.to_context();
        let num = r.gen_range(0..=10);
        let rate = Rate::ratio(num, 10).unwrap();
        let ice = iceberg_concepts(&ctx, rate).map_err(|e| e.to_string())?;
        let union: BTreeSet<usize> = mx
            .frequent_concepts(num, 10)
            .into_iter()
            .filter(|(ext, _)| !ext.is_empty())
            .flat_map(|(_, int)| int)
            .collect();
        let present: BTreeSet<usize> = topics_in_frequent_intents(&ice).iter().collect();
        let singles: BTreeSet<usize> = frequent_singletons(&ctx, rate).iter().collect();
        ensure(present == union && singles == union, || {
            format!("presence differs on case {case}")
        })?;
    }
    Ok("100 sub-contexts: intent union = frequent singletons = oracle".into())
}

fn end_to_end_determinism() -> Check {
    let start = Instant::now();
    let cfg = SyntheticConfig {
        seed: 42,
        n_dirs: 3,
        docs_per_dir: 50,
        n_topics: 20,
        ..SyntheticConfig::default()
    };
    let weights = generate_synthetic(&cfg).map_err(|e| e.to_string())?;
    let run = || run_pipeline(&weights, &PipelineConfig::default()).map_err(|e| e.to_string());
    let (a, b) = (run()?, run()?);
    ensure(a.manifest_json() == b.manifest_json(), || "manifest differs".into())?;
    ensure(a.json == b.json, || "lattice.json differs".into())?;
    ensure(a.dot == b.dot, || "lattice.dot differs".into())?;
    let took = within(start, Duration::from_secs(30), "two pipeline runs")?;
    Ok(format!(
        "3x50 docs, 20 topics: identical artifacts, {} concepts, {took:.2?}",
        a.final_lattice.concepts.len()
    ))
}

fn reduced_labeling() -> Check {
    let mut r = rng(7);
    for case in 0..100 {
        let mx = Matrix::random(&mut r, 12, 10, 1);
        let ctx = mx.to_context();
        let cs = enumerate_concepts(&ctx).map_err(|e| e.to_string())?;
        let ll = reduced_labels(&cs, &ctx);
        for m in 0..ctx.n_attributes() {
            let at = ll.attribute_labels.get(&format!("m{m}")).map(|&i| &cs.concepts()[i]);
            ensure(at.is_some_and(|c| c.extent.to_vec() == mx.extent(&[m])), || {
                format!("attribute m{m} misplaced on case {case}")
            })?;
        }
        for g in 0..ctx.n_objects() {
            let at = ll.object_labels.get(&format!("g{g}")).map(|&i| &cs.concepts()[i]);
            ensure(at.is_some_and(|c| c.intent.to_vec() == mx.intent(&[g])), || {
                format!("object g{g} misplaced on case {case}")
            })?;
        }
    }
    Ok("100 lattices: every label at its attribute or object concept".into())
}

fn performance() -> Check {
    let mut r = rng(8);
    let (g, m) = (10_000, 40);
    let rows: Vec<Vec<bool>> = (0..g).map(|_| (0..m).map(|_| r.gen_bool(0.1)).collect()).collect();
    let ctx = FormalContext::new(
        (0..g).map(|i| format!("g{i}")).collect(),
        (0..m).map(|j| format!("m{j}")).collect(),
        &rows,
    )
    .map_err(|e| e.to_string())?;
    let start = Instant::now();
    let ice = iceberg_concepts(&ctx, Rate::ratio(1, 10).unwrap()).map_err(|e| e.to_string())?;
    let took = within(start, Duration::from_secs(5), "iceberg on 10000x40")?;
    for level in &ice.stats.levels {
        ensure(level.candidates <= level.frontier_bound, || {
            format!("level {} exceeds its bound", level.size)
        })?;
    }
    let total = ice.stats.total_candidates();
    ensure((total as u64) < (1u64 << 40) / 1_000_000, || {
        format!("{total} candidates")
    })?;
    Ok(format!(
        "10000x40 at density {:.3}: {} concepts, {total} candidates, {took:.2?}",
        ctx.density(),
        ice.concepts.len()
    ))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Check);
    let checks: [Criterion; 8] = [
        ("galois-laws", galois_laws),
        ("oracle-equivalence", oracle_equivalence),
        ("contranominal-scaling", contranominal_scales),
        ("threshold-semantics", threshold_semantics),
        ("aggregation-equivalence", aggregation_equivalence),
        ("end-to-end-determinism", end_to_end_determinism),
        ("reduced-labeling", reduced_labeling),
        ("iceberg-performance", performance),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("{} passed, {failed} failed", checks.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
