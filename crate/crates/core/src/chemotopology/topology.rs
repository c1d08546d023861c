//! Finite topological spaces generated by a basis over a point set.
//!
//! In a finite space every point has a smallest open neighbourhood `U_x`,
//! the intersection of the basis sets containing it, and all the usual
//! operators reduce to tests against these sets.

use fixedbitset::FixedBitSet;

use super::dendrogram::Dendrogram;
use crate::error::{Error, Result};

/// A family of subsets of the ground set that always contains the ground
/// set itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    points: Vec<String>,
    sets: Vec<FixedBitSet>,
}

impl Basis {
    /// The ground set is appended when missing; empty sets are dropped.
    pub fn new(points: Vec<String>, sets: Vec<FixedBitSet>) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let mut unique = std::collections::BTreeSet::new();
        for p in &points {
            if !unique.insert(p.as_str()) {
                return Err(Error::InvalidArgument(format!("duplicate point `{p}`")));
            }
        }
        let mut kept: Vec<FixedBitSet> = Vec::with_capacity(sets.len() + 1);
        for mut set in sets {
            if set.len() > n && set.ones().any(|i| i >= n) {
                return Err(Error::InvalidArgument(
                    "basis set outside the ground set".into(),
                ));
            }
            set.grow(n);
            if set.len() > n {
                let mut trimmed = FixedBitSet::with_capacity(n);
                trimmed.extend(set.ones());
                set = trimmed;
            }
            if set.is_clear() || kept.contains(&set) {
                continue;
            }
            kept.push(set);
        }
        let mut whole = FixedBitSet::with_capacity(n);
        whole.insert_range(..);
        if !kept.contains(&whole) {
            kept.push(whole);
        }
        Ok(Self { points, sets: kept })
    }

    /// Builds a basis from named subsets.
    pub fn from_names(points: Vec<String>, sets: &[Vec<&str>]) -> Result<Self> {
        let bitsets = sets
            .iter()
            .map(|s| subset_of(&points, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points, bitsets)
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn sets(&self) -> &[FixedBitSet] {
        &self.sets
    }

    pub fn named_sets(&self) -> Vec<Vec<&str>> {
        self.sets
            .iter()
            .map(|s| s.ones().map(|i| self.points[i].as_str()).collect())
            .collect()
    }
}

fn subset_of(points: &[String], names: &[&str]) -> Result<FixedBitSet> {
    let mut set = FixedBitSet::with_capacity(points.len());
    for name in names {
        let i = points
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| Error::NotInSpace(name.to_string()))?;
        set.insert(i);
    }
    Ok(set)
}

/// Basis made of the leaf sets of every internal node of the tree (the root
/// gives the whole set), optionally with the singletons.
pub fn branch_basis(dendrogram: &Dendrogram, include_singletons: bool) -> Basis {
    let n = dendrogram.len();
    let mut sets = Vec::new();
    if include_singletons {
        for i in 0..n {
            let mut s = FixedBitSet::with_capacity(n);
            s.insert(i);
            sets.push(s);
        }
    }
    for leaves in dendrogram.internal_leaf_sets() {
        let mut s = FixedBitSet::with_capacity(n);
        s.extend(leaves);
        sets.push(s);
    }
    Basis::new(dendrogram.leaves().to_vec(), sets).expect("dendrogram leaves are unique")
}

/// A finite space represented by the minimal open neighbourhood of each point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
    neighborhoods: Vec<FixedBitSet>,
}

/// `U_x` = intersection of the basis sets containing `x`.
pub fn minimal_neighborhoods(basis: &Basis) -> FiniteSpace {
    let n = basis.points.len();
    let neighborhoods = (0..n)
        .map(|x| {
            let mut u = FixedBitSet::with_capacity(n);
            u.insert_range(..);
            for set in basis.sets.iter().filter(|s| s.contains(x)) {
                u.intersect_with(set);
            }
            u
        })
        .collect();
    FiniteSpace {
        points: basis.points.clone(),
        neighborhoods,
    }
}

impl FiniteSpace {
    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn neighborhood(&self, x: usize) -> &FixedBitSet {
        &self.neighborhoods[x]
    }

    /// Resolves point names to a subset; unknown names are an error.
    pub fn subset(&self, names: &[&str]) -> Result<FixedBitSet> {
        subset_of(&self.points, names)
    }

    pub fn names(&self, set: &FixedBitSet) -> Vec<String> {
        set.ones().map(|i| self.points[i].clone()).collect()
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn whole(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn complement(&self, set: &FixedBitSet) -> Result<FixedBitSet> {
        let set = self.check(set)?;
        let mut out = self.whole();
        out.difference_with(set);
        Ok(out)
    }

    fn check<'a>(&self, set: &'a FixedBitSet) -> Result<&'a FixedBitSet> {
        if let Some(i) = set.ones().find(|&i| i >= self.len()) {
            return Err(Error::NotInSpace(format!("#{i}")));
        }
        Ok(set)
    }

    fn collect(&self, mut keep: impl FnMut(usize) -> bool) -> FixedBitSet {
        let mut out = self.empty_set();
        out.extend((0..self.len()).filter(|&x| keep(x)));
        out
    }

    /// `{x : U_x meets A}`.
    pub fn closure(&self, set: &FixedBitSet) -> Result<FixedBitSet> {
        let set = self.check(set)?;
        Ok(self.collect(|x| !self.neighborhoods[x].is_disjoint(set)))
    }

    /// `{x in A : U_x within A}`.
    pub fn interior(&self, set: &FixedBitSet) -> Result<FixedBitSet> {
        let set = self.check(set)?;
        Ok(self.collect(|x| set.contains(x) && self.neighborhoods[x].is_subset(set)))
    }

    /// Closure minus interior.
    pub fn boundary(&self, set: &FixedBitSet) -> Result<FixedBitSet> {
        let mut out = self.closure(set)?;
        out.difference_with(&self.interior(set)?);
        Ok(out)
    }

    /// Limit points: `{x : U_x meets A \ {x}}`.
    pub fn derived_set(&self, set: &FixedBitSet) -> Result<FixedBitSet> {
        let set = self.check(set)?;
        Ok(self.collect(|x| {
            self.neighborhoods[x]
                .ones()
                .any(|y| y != x && set.contains(y))
        }))
    }

    /// Whether every minimal neighbourhood is a singleton.
    pub fn is_discrete(&self) -> bool {
        self.neighborhoods.iter().all(|u| u.count_ones(..) == 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOperator {
    Closure,
    Interior,
    Boundary,
    Derived,
}

impl std::str::FromStr for SetOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closure" => Ok(Self::Closure),
            "interior" => Ok(Self::Interior),
            "boundary" => Ok(Self::Boundary),
            "derived" => Ok(Self::Derived),
            _ => Err(Error::InvalidArgument(format!(
                "unknown set operator `{s}`"
            ))),
        }
    }
}

impl FiniteSpace {
    pub fn apply(&self, op: SetOperator, set: &FixedBitSet) -> Result<FixedBitSet> {
        match op {
            SetOperator::Closure => self.closure(set),
            SetOperator::Interior => self.interior(set),
            SetOperator::Boundary => self.boundary(set),
            SetOperator::Derived => self.derived_set(set),
        }
    }
}
