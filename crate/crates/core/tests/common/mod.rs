//! Reference implementations used as oracles by the integration tests.
//! They favour directness over speed and share no code with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

use periodic_law::chemotopology::{Basis, DistanceMatrix, Linkage};
use rand::Rng;

/// One merge of the reference clusterer: the two leaf sets and the height.
#[derive(Debug, Clone, PartialEq)]
pub struct NaiveMerge {
    pub left: BTreeSet<usize>,
    pub right: BTreeSet<usize>,
    pub height: f64,
}

/// Agglomerative clustering that recomputes every linkage distance from the
/// leaf pairs at every step.
pub fn naive_cluster(d: &DistanceMatrix, linkage: Linkage) -> Vec<NaiveMerge> {
    let ids = d.ids();
    let mut clusters: Vec<BTreeSet<usize>> = (0..d.len()).map(|i| BTreeSet::from([i])).collect();
    let ident = |c: &BTreeSet<usize>| {
        c.iter()
            .map(|&i| ids[i].as_str())
            .min()
            .unwrap()
            .to_string()
    };
    let mut merges = Vec::new();
    while clusters.len() > 1 {
        let mut best: Option<(f64, (String, String), usize, usize)> = None;
        for a in 0..clusters.len() {
            for b in a + 1..clusters.len() {
                let pairs = clusters[a]
                    .iter()
                    .flat_map(|&i| clusters[b].iter().map(move |&j| (i, j)));
                let dist = match linkage {
                    Linkage::Single => pairs
                        .map(|(i, j)| d.get(i, j))
                        .fold(f64::INFINITY, f64::min),
                    Linkage::Complete => pairs
                        .map(|(i, j)| d.get(i, j))
                        .fold(f64::NEG_INFINITY, f64::max),
                    Linkage::Average => {
                        let sum: f64 = pairs.map(|(i, j)| d.get(i, j)).sum();
                        sum / (clusters[a].len() * clusters[b].len()) as f64
                    }
                };
                let (ia, ib) = (ident(&clusters[a]), ident(&clusters[b]));
                let key = if ia <= ib { (ia, ib) } else { (ib, ia) };
                let better = match &best {
                    None => true,
                    Some((bd, bk, _, _)) => dist < *bd || (dist == *bd && key < *bk),
                };
                if better {
                    best = Some((dist, key, a, b));
                }
            }
        }
        let (height, _, a, b) = best.unwrap();
        let (left, right) = if ident(&clusters[a]) <= ident(&clusters[b]) {
            (a, b)
        } else {
            (b, a)
        };
        let merged: BTreeSet<usize> = clusters[a].union(&clusters[b]).copied().collect();
        merges.push(NaiveMerge {
            left: clusters[left].clone(),
            right: clusters[right].clone(),
            height,
        });
        let (lo, hi) = (a.min(b), a.max(b));
        clusters.remove(hi);
        clusters[lo] = merged;
    }
    merges
}

/// Symmetric matrix of small integer distances, so sums are exact and ties
/// are common.
pub fn random_integer_matrix(rng: &mut impl Rng, n: usize, max: u32) -> DistanceMatrix {
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let v = f64::from(rng.gen_range(1..=max));
            values[i * n + j] = v;
            values[j * n + i] = v;
        }
    }
    let ids = random_ids(rng, n);
    DistanceMatrix::new(ids, values).unwrap()
}

/// Distinct identifiers whose lexicographic order is unrelated to position.
pub fn random_ids(rng: &mut impl Rng, n: usize) -> Vec<String> {
    let mut ids = BTreeSet::new();
    while ids.len() < n {
        let len = rng.gen_range(1..=3);
        let s: String = (0..len)
            .map(|_| rng.gen_range(b'a'..=b'z') as char)
            .collect();
        ids.insert(s);
    }
    let mut ids: Vec<String> = ids.into_iter().collect();
    for i in (1..ids.len()).rev() {
        ids.swap(i, rng.gen_range(0..=i));
    }
    ids
}

pub fn points(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// Random family of subsets over `n` points, as bitmasks.
pub fn random_masks(rng: &mut impl Rng, n: usize, max_sets: usize) -> Vec<u32> {
    let count = rng.gen_range(0..=max_sets);
    (0..count).map(|_| rng.gen_range(0..(1u32 << n))).collect()
}

pub fn basis_from_masks(n: usize, masks: &[u32]) -> Basis {
    let sets = masks
        .iter()
        .map(|&m| {
            let mut s = fixedbitset::FixedBitSet::with_capacity(n);
            s.extend((0..n).filter(|i| m >> i & 1 == 1));
            s
        })
        .collect();
    Basis::new(points(n), sets).unwrap()
}

pub fn to_mask(set: &fixedbitset::FixedBitSet) -> u32 {
    set.ones().fold(0, |m, i| m | 1 << i)
}

/// All open sets of the topology generated by `masks` (plus the whole set):
/// finite intersections close the family first, then arbitrary unions.
pub fn enumerate_topology(n: usize, masks: &[u32]) -> Vec<u32> {
    let whole = (1u32 << n) - 1;
    let mut base: BTreeSet<u32> = masks.iter().copied().collect();
    base.insert(whole);
    loop {
        let current: Vec<u32> = base.iter().copied().collect();
        let before = base.len();
        for &a in &current {
            for &b in &current {
                base.insert(a & b);
            }
        }
        if base.len() == before {
            break;
        }
    }
    let mut open: BTreeSet<u32> = BTreeSet::from([0]);
    for &b in &base {
        let current: Vec<u32> = open.iter().copied().collect();
        for o in current {
            open.insert(o | b);
        }
    }
    open.into_iter().collect()
}

/// Closure, interior and boundary straight from the list of open sets.
pub struct TopologyOracle {
    pub n: usize,
    pub open: Vec<u32>,
}

impl TopologyOracle {
    pub fn whole(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    pub fn interior(&self, a: u32) -> u32 {
        self.open
            .iter()
            .filter(|&&o| o & !a == 0)
            .fold(0, |acc, &o| acc | o)
    }

    pub fn closure(&self, a: u32) -> u32 {
        // the smallest closed superset: complement of the largest open set missing A
        let whole = self.whole();
        whole & !self.interior(whole & !a)
    }

    pub fn boundary(&self, a: u32) -> u32 {
        self.closure(a) & !self.interior(a)
    }
}
