//! Iceberg concept lattices by level-wise key-set search.
//!
//! Level `k` holds candidate attribute sets of size `k`, generated Apriori
//! style from the frequent key sets of level `k - 1`. A candidate is a key
//! when its support is strictly below that of each of its `(k-1)`-subsets;
//! supersets of non-keys are never keys and supersets of infrequent sets are
//! never frequent, so both are pruned from the next level. Once the search
//! ends, the closure of every frequent key is recovered from counted supports
//! alone: `m` belongs to `closure(X)` iff `supp(X ∪ {m}) = supp(X)`, and the
//! support of any set equals the minimum over the counted sets it contains.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::context::{ConceptSet, FormalConcept, FormalContext};
use crate::error::{Error, Result};
use crate::rate::Rate;

/// Counts recorded for one level of the search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelStats {
    pub size: usize,
    /// Candidate sets whose support was counted.
    pub candidates: usize,
    pub frequent_keys: usize,
    /// Largest candidate count the Apriori frontier of the previous level permits.
    pub frontier_bound: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IcebergStats {
    pub levels: Vec<LevelStats>,
}

impl IcebergStats {
    pub fn total_candidates(&self) -> usize {
        self.levels.iter().map(|l| l.candidates).sum()
    }
}

/// The frequent concepts of a context and their cover relation.
#[derive(Clone, Debug, PartialEq)]
pub struct IcebergLattice {
    pub minsupp: Rate,
    pub concepts: ConceptSet,
    pub stats: IcebergStats,
}

impl IcebergLattice {
    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }
}

/// `support(B) >= minsupp`, inclusive at the boundary.
pub fn is_frequent<S: AsRef<str>>(context: &FormalContext, attributes: &[S], minsupp: Rate) -> Result<bool> {
    let set = context.attribute_set(attributes)?;
    if context.n_objects() == 0 {
        return Err(Error::EmptyObjects);
    }
    Ok(minsupp.is_met_by(context.support_count(&set), context.n_objects()))
}

/// Like [`is_frequent`] but validating a raw float threshold.
pub fn is_frequent_f64<S: AsRef<str>>(context: &FormalContext, attributes: &[S], minsupp: f64) -> Result<bool> {
    let rate = Rate::from_f64(minsupp).map_err(|_| Error::rate("minsupp", minsupp, "[0, 1]"))?;
    is_frequent(context, attributes, rate)
}

struct Key {
    items: Vec<usize>,
    set: BitSet,
    extent: BitSet,
}

impl Key {
    fn count(&self) -> usize {
        self.extent.len()
    }
}

/// All concepts whose intent has support at least `minsupp`.
pub fn iceberg_concepts(context: &FormalContext, minsupp: Rate) -> Result<IcebergLattice> {
    let n = context.n_objects();
    if n == 0 {
        return Err(Error::EmptyObjects);
    }
    let m = context.n_attributes();
    let min_count = minsupp.min_count(n);

    // Every counted set, keyed by its attribute set.
    let mut counted: HashMap<BitSet, usize> = HashMap::new();
    let mut frequent_keys: Vec<Key> = Vec::new();
    let mut stats = IcebergStats::default();

    let empty = Key {
        items: Vec::new(),
        set: BitSet::empty(m),
        extent: BitSet::full(n),
    };
    counted.insert(empty.set.clone(), n);

    // Attributes with identical columns share every closure, so the search
    // runs over one representative per column and intents are widened after.
    let mut first_with: HashMap<&BitSet, usize> = HashMap::new();
    let rep: Vec<usize> = (0..m)
        .map(|j| *first_with.entry(context.column(j)).or_insert(j))
        .collect();

    // Level 1: all singletons, parent support |G|.
    let mut level: Vec<Key> = Vec::new();
    for j in (0..m).filter(|&j| rep[j] == j) {
        let extent = context.column(j).clone();
        let count = extent.len();
        let set = BitSet::from_indices(m, [j]);
        counted.insert(set.clone(), count);
        if count < n && count >= min_count {
            level.push(Key {
                items: vec![j],
                set,
                extent,
            });
        }
    }
    stats.levels.push(LevelStats {
        size: 1,
        candidates: rep.iter().enumerate().filter(|&(j, &r)| r == j).count(),
        frequent_keys: level.len(),
        frontier_bound: m,
    });
    frequent_keys.push(empty);

    let mut size = 1;
    while level.len() >= 2 {
        size += 1;
        let previous: HashMap<&BitSet, usize> = level.iter().map(|k| (&k.set, k.count())).collect();
        let pairs = join_candidates(&level, &previous);
        let bound = binomial(m, size).min(level.len() * (level.len() - 1) / 2);

        let evaluated: Vec<(usize, usize, BitSet, BitSet, usize)> = pairs
            .into_par_iter()
            .map(|(a, b)| {
                let mut set = level[a].set.clone();
                set.insert(*level[b].items.last().expect("non-empty key"));
                let extent = level[a].extent.intersection(&level[b].extent);
                let parent_support = set
                    .iter()
                    .map(|drop| {
                        let mut sub = set.clone();
                        sub.remove(drop);
                        previous[&sub]
                    })
                    .min()
                    .expect("candidate has subsets");
                (a, b, set, extent, parent_support)
            })
            .collect();

        let mut next = Vec::new();
        let candidates = evaluated.len();
        for (a, b, set, extent, parent_support) in evaluated {
            let count = extent.len();
            counted.insert(set.clone(), count);
            if count < parent_support && count >= min_count {
                let mut items = level[a].items.clone();
                items.push(*level[b].items.last().expect("non-empty key"));
                next.push(Key { items, set, extent });
            }
        }
        stats.levels.push(LevelStats {
            size,
            candidates,
            frequent_keys: next.len(),
            frontier_bound: bound,
        });
        frequent_keys.append(&mut level);
        level = next;
    }
    frequent_keys.append(&mut level);

    let mut by_intent: HashMap<BitSet, BitSet> = HashMap::new();
    let closures: Vec<(BitSet, &BitSet)> = frequent_keys
        .par_iter()
        .map(|key| (closure_from_supports(key, &rep, &counted), &key.extent))
        .collect();
    for (intent, extent) in closures {
        by_intent.entry(intent).or_insert_with(|| extent.clone());
    }
    let concepts = by_intent
        .into_iter()
        .map(|(intent, extent)| FormalConcept::new(extent, intent, n))
        .collect();
    Ok(IcebergLattice {
        minsupp,
        concepts: ConceptSet::new(context, concepts)?,
        stats,
    })
}

/// Pairs of keys sharing all but their last item whose union has every
/// `(k-1)`-subset among the previous level's frequent keys.
fn join_candidates(level: &[Key], previous: &HashMap<&BitSet, usize>) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..level.len()).collect();
    order.sort_by(|&a, &b| level[a].items.cmp(&level[b].items));
    let mut pairs = Vec::new();
    for (pos, &a) in order.iter().enumerate() {
        let prefix = &level[a].items[..level[a].items.len() - 1];
        for &b in &order[pos + 1..] {
            if &level[b].items[..prefix.len()] != prefix {
                break;
            }
            let mut union = level[a].set.clone();
            union.insert(*level[b].items.last().expect("non-empty key"));
            let all_present = union.iter().all(|drop| {
                let mut sub = union.clone();
                sub.remove(drop);
                previous.contains_key(&sub)
            });
            if all_present {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

fn closure_from_supports(key: &Key, rep: &[usize], counted: &HashMap<BitSet, usize>) -> BitSet {
    let m = rep.len();
    let own = key.count();
    let mut closure = key.set.clone();
    let subsets = 1usize << key.items.len();
    for attr in (0..m).filter(|&j| rep[j] == j) {
        if key.set.contains(attr) {
            continue;
        }
        // supp(X ∪ {attr}) = min over counted subsets; those without `attr`
        // lie inside X and cannot go below supp(X).
        let mut support = own;
        for mask in 0..subsets {
            let mut probe = BitSet::from_indices(m, [attr]);
            for (bit, &item) in key.items.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    probe.insert(item);
                }
            }
            if let Some(&c) = counted.get(&probe) {
                support = support.min(c);
                if support < own {
                    break;
                }
            }
        }
        if support == own {
            closure.insert(attr);
        }
    }
    for (attr, &r) in rep.iter().enumerate() {
        if r != attr && closure.contains(r) {
            closure.insert(attr);
        }
    }
    closure
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}
