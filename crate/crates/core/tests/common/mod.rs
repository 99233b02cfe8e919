//! Test-only oracle: brute-force concept enumeration over plain boolean
//! matrices, independent of the crate's bitsets and search code.
#![allow(dead_code)]

use std::collections::BTreeSet;

use fatcat::{BitSet, ConceptSet, FormalContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Pair = (Vec<usize>, Vec<usize>);

/// A plain incidence matrix, rows = objects.
#[derive(Clone, Debug)]
pub struct Matrix {
    pub rows: Vec<Vec<bool>>,
    pub n_attrs: usize,
}

impl Matrix {
    pub fn random(rng: &mut ChaCha8Rng, max_objects: usize, max_attrs: usize, min_objects: usize) -> Self {
        let g = rng.gen_range(min_objects..=max_objects);
        let m = rng.gen_range(0..=max_attrs);
        let p: f64 = rng.gen_range(0.1..0.9);
        let rows = (0..g).map(|_| (0..m).map(|_| rng.gen_bool(p)).collect()).collect();
        Matrix { rows, n_attrs: m }
    }

    pub fn contranominal(n: usize) -> Self {
        Matrix {
            rows: (0..n).map(|i| (0..n).map(|j| i != j).collect()).collect(),
            n_attrs: n,
        }
    }

    pub fn to_context(&self) -> FormalContext {
        let objects = (0..self.rows.len()).map(|i| format!("g{i}")).collect();
        let attributes = (0..self.n_attrs).map(|j| format!("m{j}")).collect();
        FormalContext::new(objects, attributes, &self.rows).expect("valid matrix")
    }

    /// Objects having every attribute in `attrs`.
    pub fn extent(&self, attrs: &[usize]) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|&g| attrs.iter().all(|&m| self.rows[g][m]))
            .collect()
    }

    /// Attributes shared by every object in `objs`.
    pub fn intent(&self, objs: &[usize]) -> Vec<usize> {
        (0..self.n_attrs)
            .filter(|&m| objs.iter().all(|&g| self.rows[g][m]))
            .collect()
    }

    /// Every concept, by closing all 2^|M| attribute subsets.
    pub fn all_concepts(&self) -> BTreeSet<Pair> {
        assert!(self.n_attrs <= 16, "oracle is exponential");
        let mut out = BTreeSet::new();
        for mask in 0u32..(1 << self.n_attrs) {
            let subset: Vec<usize> = (0..self.n_attrs).filter(|&j| mask & (1 << j) != 0).collect();
            let ext = self.extent(&subset);
            let closed = self.intent(&ext);
            if closed == subset {
                out.insert((ext, closed));
            }
        }
        out
    }

    /// Concepts whose intent has `|extent| * den >= num * |G|`.
    pub fn frequent_concepts(&self, num: u64, den: u64) -> BTreeSet<Pair> {
        let n = self.rows.len() as u64;
        self.all_concepts()
            .into_iter()
            .filter(|(ext, _)| (ext.len() as u64) * den >= num * n)
            .collect()
    }
}

pub fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// Transitive reduction, as (parent extent, child extent).
///
/// Below each concept, candidates are scanned by decreasing extent size: a
/// candidate is a lower cover iff no lower cover found so far contains it,
/// since anything strictly between lies under some larger lower cover.
pub fn brute_covers(concepts: &BTreeSet<Pair>) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let mask = |ext: &[usize]| {
        ext.iter().fold(0u128, |acc, &g| {
            assert!(g < 128, "oracle masks hold 128 objects");
            acc | (1 << g)
        })
    };
    let mut list: Vec<(u128, &Vec<usize>)> = concepts.iter().map(|p| (mask(&p.0), &p.0)).collect();
    list.sort_by_key(|(m, _)| std::cmp::Reverse(m.count_ones()));
    let mut out = BTreeSet::new();
    for &(p, p_ext) in &list {
        let mut lower: Vec<u128> = Vec::new();
        for &(c, c_ext) in &list {
            let below = c != p && c & p == c;
            if below && !lower.iter().any(|&q| c & q == c) {
                lower.push(c);
                out.insert((p_ext.clone(), c_ext.clone()));
            }
        }
    }
    out
}

pub fn concept_pairs(cs: &ConceptSet) -> BTreeSet<Pair> {
    cs.concepts()
        .iter()
        .map(|c| (c.extent.to_vec(), c.intent.to_vec()))
        .collect()
}

pub fn cover_pairs(cs: &ConceptSet) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    cs.covers()
        .iter()
        .map(|&(p, c)| (cs.concepts()[p].extent.to_vec(), cs.concepts()[c].extent.to_vec()))
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_subset(rng: &mut ChaCha8Rng, universe: usize) -> BitSet {
    BitSet::from_indices(universe, (0..universe).filter(|_| rng.gen_bool(0.5)))
}

/// Random dense weight rows with some zero cells.
pub fn random_weights(rng: &mut ChaCha8Rng, docs: usize, topics: usize) -> Vec<Vec<f64>> {
    (0..docs)
        .map(|_| {
            (0..topics)
                .map(|_| {
                    if rng.gen_bool(0.3) {
                        0.0
                    } else {
                        // coarse grid so ties are common
                        (rng.gen_range(1..=20) as f64) / 20.0
                    }
                })
                .collect()
        })
        .collect()
}
