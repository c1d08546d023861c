//! Agglomerative clustering with Lance-Williams updates.
//!
//! At every step the pair of active clusters with the smallest linkage
//! distance merges. Ties go to the pair whose identifiers compare smallest,
//! where a cluster's identifier is the lexicographically smallest leaf
//! identifier it contains. The result therefore depends on identifiers, not
//! on row order.

use std::cmp::Ordering;

use serde::Serialize;

use super::dendrogram::{Dendrogram, Merge};
use super::distance::DistanceMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Linkage {
    Single,
    Complete,
    #[default]
    Average,
}

impl std::str::FromStr for Linkage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" => Ok(Self::Single),
            "complete" => Ok(Self::Complete),
            "average" => Ok(Self::Average),
            _ => Err(Error::InvalidArgument(format!("unknown linkage `{s}`"))),
        }
    }
}

/// Total order on candidate merges: distance first, then identifier pair.
pub(crate) fn candidate_order(
    d1: f64,
    key1: (&str, &str),
    d2: f64,
    key2: (&str, &str),
) -> Ordering {
    d1.total_cmp(&d2).then_with(|| key1.cmp(&key2))
}

pub(crate) fn pair_key<'a>(a: &'a str, b: &'a str) -> (&'a str, &'a str) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

struct State<'a> {
    linkage: Linkage,
    /// Single/complete: the linkage distance. Average: the sum of leaf-pair
    /// distances, so the update is a plain addition.
    stored: Vec<f64>,
    n: usize,
    active: Vec<bool>,
    size: Vec<usize>,
    representative: Vec<&'a str>,
    node: Vec<usize>,
    nearest: Vec<Option<usize>>,
}

impl<'a> State<'a> {
    fn distance(&self, i: usize, j: usize) -> f64 {
        let s = self.stored[i * self.n + j];
        match self.linkage {
            Linkage::Average => s / (self.size[i] * self.size[j]) as f64,
            _ => s,
        }
    }

    fn key(&self, i: usize, j: usize) -> (&'a str, &'a str) {
        pair_key(self.representative[i], self.representative[j])
    }

    fn better(&self, i: usize, j: usize, k: usize, l: usize) -> bool {
        candidate_order(
            self.distance(i, j),
            self.key(i, j),
            self.distance(k, l),
            self.key(k, l),
        ) == Ordering::Less
    }

    fn refresh_nearest(&mut self, i: usize) {
        let mut best: Option<usize> = None;
        for j in 0..self.n {
            if j == i || !self.active[j] {
                continue;
            }
            if best.is_none_or(|b| self.better(i, j, i, b)) {
                best = Some(j);
            }
        }
        self.nearest[i] = best;
    }
}

/// Clusters `distances` bottom-up. Requires at least two items.
pub fn agglomerative_cluster(distances: &DistanceMatrix, linkage: Linkage) -> Result<Dendrogram> {
    let n = distances.len();
    if n < 2 {
        return Err(Error::TooFewItems { needed: 2, got: n });
    }
    let ids = distances.ids();
    let mut stored = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            stored[i * n + j] = distances.get(i, j);
        }
    }
    let mut state = State {
        linkage,
        stored,
        n,
        active: vec![true; n],
        size: vec![1; n],
        representative: ids.iter().map(String::as_str).collect(),
        node: (0..n).collect(),
        nearest: vec![None; n],
    };
    for i in 0..n {
        state.refresh_nearest(i);
    }

    let mut merges = Vec::with_capacity(n - 1);
    for step in 0..n - 1 {
        let mut best: Option<(usize, usize)> = None;
        for i in (0..n).filter(|&i| state.active[i]) {
            let j = state.nearest[i].expect("active cluster has a neighbour");
            if best.is_none_or(|(bi, bj)| state.better(i, j, bi, bj)) {
                best = Some((i, j));
            }
        }
        let (i, j) = best.expect("at least two active clusters");
        // the surviving slot keeps the cluster with the smaller identifier
        let (keep, gone) = if state.representative[i] <= state.representative[j] {
            (i, j)
        } else {
            (j, i)
        };
        let height = state.distance(keep, gone);
        merges.push(Merge {
            left: state.node[keep],
            right: state.node[gone],
            height,
        });

        for k in 0..n {
            if !state.active[k] || k == keep || k == gone {
                continue;
            }
            let a = state.stored[keep * n + k];
            let b = state.stored[gone * n + k];
            let updated = match linkage {
                Linkage::Single => a.min(b),
                Linkage::Complete => a.max(b),
                Linkage::Average => a + b,
            };
            state.stored[keep * n + k] = updated;
            state.stored[k * n + keep] = updated;
        }
        state.active[gone] = false;
        state.size[keep] += state.size[gone];
        state.node[keep] = n + step;

        for k in 0..n {
            if !state.active[k] {
                continue;
            }
            if k == keep || matches!(state.nearest[k], Some(m) if m == keep || m == gone) {
                state.refresh_nearest(k);
            } else if let Some(m) = state.nearest[k] {
                if state.better(k, keep, k, m) {
                    state.nearest[k] = Some(keep);
                }
            }
        }
    }
    Dendrogram::new(ids.to_vec(), merges)
}
