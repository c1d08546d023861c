//! Partial orders on sets of elements, induced by property dominance or by
//! position in the table, with Hasse reduction.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::element_data::{LayoutFixture, PropertyTable};
use crate::error::{Error, Result};

/// The axiom a relation fails first, in the order reflexivity,
/// antisymmetry, transitivity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation {
    Reflexivity { item: String },
    Antisymmetry { a: String, b: String },
    Transitivity { a: String, b: String, c: String },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Reflexivity { item } => write!(f, "reflexivity fails at {item}"),
            Self::Antisymmetry { a, b } => write!(f, "antisymmetry fails: {a} <= {b} <= {a}"),
            Self::Transitivity { a, b, c } => {
                write!(
                    f,
                    "transitivity fails: {a} <= {b} <= {c} but not {a} <= {c}"
                )
            }
        }
    }
}

/// Checks the three partial-order axioms. `Ok(None)` means the relation is a
/// partial order; pairs mentioning items outside `ground` are an error.
pub fn verify_partial_order(
    ground: &[&str],
    relation: &[(&str, &str)],
) -> Result<Option<AxiomViolation>> {
    let matrix = relation_matrix(ground, relation)?;
    Ok(first_violation(ground.len(), &matrix, |i| {
        ground[i].to_string()
    }))
}

fn relation_matrix(ground: &[&str], relation: &[(&str, &str)]) -> Result<Vec<bool>> {
    let index: HashMap<&str, usize> = ground.iter().enumerate().map(|(i, g)| (*g, i)).collect();
    if index.len() != ground.len() {
        return Err(Error::InvalidArgument("ground set has duplicates".into()));
    }
    let n = ground.len();
    let mut matrix = vec![false; n * n];
    for (a, b) in relation {
        let lookup = |x: &str| {
            index
                .get(x)
                .copied()
                .ok_or_else(|| Error::UnknownElement(x.to_string()))
        };
        matrix[lookup(a)? * n + lookup(b)?] = true;
    }
    Ok(matrix)
}

fn first_violation(
    n: usize,
    leq: &[bool],
    name: impl Fn(usize) -> String,
) -> Option<AxiomViolation> {
    if let Some(i) = (0..n).find(|&i| !leq[i * n + i]) {
        return Some(AxiomViolation::Reflexivity { item: name(i) });
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && leq[a * n + b] && leq[b * n + a] {
                return Some(AxiomViolation::Antisymmetry {
                    a: name(a),
                    b: name(b),
                });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !leq[a * n + b] {
                continue;
            }
            for c in 0..n {
                if leq[b * n + c] && !leq[a * n + c] {
                    return Some(AxiomViolation::Transitivity {
                        a: name(a),
                        b: name(b),
                        c: name(c),
                    });
                }
            }
        }
    }
    None
}

/// A finite partial order stored as a dense relation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    ground: Vec<String>,
    leq: Vec<bool>,
}

impl Poset {
    /// Builds a poset from explicit pairs, rejecting anything that is not a
    /// partial order.
    pub fn from_pairs(ground: Vec<String>, relation: &[(&str, &str)]) -> Result<Self> {
        let names: Vec<&str> = ground.iter().map(String::as_str).collect();
        let leq = relation_matrix(&names, relation)?;
        Self::from_matrix(ground, leq)
    }

    pub fn from_matrix(ground: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = ground.len();
        if leq.len() != n * n {
            return Err(Error::InvalidArgument(
                "relation matrix has the wrong size".into(),
            ));
        }
        if let Some(v) = first_violation(n, &leq, |i| ground[i].clone()) {
            return Err(Error::InvalidArgument(v.to_string()));
        }
        Ok(Self { ground, leq })
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn index_of(&self, item: &str) -> Option<usize> {
        self.ground.iter().position(|g| g == item)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// All `(a, b)` with `a <= b`, by name, including the reflexive pairs.
    pub fn pairs(&self) -> Vec<(String, String)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.leq(a, b) {
                    out.push((self.ground[a].clone(), self.ground[b].clone()));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Ascending,
    Descending,
}

impl std::str::FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascending" | "asc" => Ok(Self::Ascending),
            "descending" | "desc" => Ok(Self::Descending),
            _ => Err(Error::InvalidArgument(format!("unknown orientation `{s}`"))),
        }
    }
}

/// `a <= b` iff `a` is weakly below `b` on every selected property (after
/// flipping descending ones). Missing values and exact ties between distinct
/// elements leave the pair incomparable.
pub fn dominance_poset(
    table: &PropertyTable,
    selected: &[&str],
    orientations: &[Orientation],
) -> Result<Poset> {
    if selected.is_empty() {
        return Err(Error::InvalidArgument("no properties selected".into()));
    }
    if orientations.len() != selected.len() {
        return Err(Error::InvalidArgument(
            "one orientation per selected property is required".into(),
        ));
    }
    let columns = selected
        .iter()
        .map(|name| table.property_index(name))
        .collect::<Result<Vec<_>>>()?;
    let vectors: Vec<Option<Vec<f64>>> = table
        .elements()
        .iter()
        .map(|e| {
            columns
                .iter()
                .zip(orientations)
                .map(|(&c, o)| {
                    e.values[c].map(|v| match o {
                        Orientation::Ascending => v,
                        Orientation::Descending => -v,
                    })
                })
                .collect()
        })
        .collect();

    let n = vectors.len();
    let mut leq = vec![false; n * n];
    for a in 0..n {
        leq[a * n + a] = true;
        let Some(va) = &vectors[a] else { continue };
        for b in 0..n {
            if a == b {
                continue;
            }
            let Some(vb) = &vectors[b] else { continue };
            let weakly_below = va.iter().zip(vb).all(|(x, y)| x <= y);
            let tied = va.iter().zip(vb).all(|(x, y)| x == y);
            leq[a * n + b] = weakly_below && !tied;
        }
    }
    Poset::from_matrix(table.symbols(), leq)
}

/// A positional poset plus the members that had no group and were left out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionalPoset {
    pub poset: Poset,
    pub excluded: Vec<String>,
}

/// Product order on `(group, period)`. Members without a group (f-block)
/// are excluded and listed in the result.
pub fn positional_poset(layout: &LayoutFixture, members: &[&str]) -> Result<PositionalPoset> {
    let mut ground = Vec::new();
    let mut cells = Vec::new();
    let mut excluded = Vec::new();
    for &symbol in members {
        let c = layout.coordinates_of(symbol)?;
        match c.group {
            Some(g) => {
                ground.push(symbol.to_string());
                cells.push((g, c.period));
            }
            None => excluded.push(symbol.to_string()),
        }
    }
    let n = ground.len();
    let mut leq = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            leq[a * n + b] = cells[a].0 <= cells[b].0 && cells[a].1 <= cells[b].1;
        }
    }
    Ok(PositionalPoset {
        poset: Poset::from_matrix(ground, leq)?,
        excluded,
    })
}

/// Cover relation of a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseDiagram {
    pub ground: Vec<String>,
    /// `(a, b)` indices into `ground`, `a` covered by `b`.
    pub covers: Vec<(usize, usize)>,
}

impl HasseDiagram {
    /// Reflexive-transitive closure of the covers.
    pub fn closure(&self) -> Result<Poset> {
        let n = self.ground.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in &self.covers {
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        Poset::from_matrix(self.ground.clone(), leq)
    }

    pub fn cover_names(&self) -> Vec<(&str, &str)> {
        self.covers
            .iter()
            .map(|&(a, b)| (self.ground[a].as_str(), self.ground[b].as_str()))
            .collect()
    }

    /// DOT digraph with edges pointing up the order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
        for g in &self.ground {
            let _ = writeln!(out, "  {};", dot_id(g));
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(
                out,
                "  {} -> {};",
                dot_id(&self.ground[a]),
                dot_id(&self.ground[b])
            );
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn dot_id(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Transitive reduction of the strict order.
pub fn hasse(poset: &Poset) -> HasseDiagram {
    let n = poset.len();
    let mut covers = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if poset.less(a, b) && !(0..n).any(|c| poset.less(a, c) && poset.less(c, b)) {
                covers.push((a, b));
            }
        }
    }
    HasseDiagram {
        ground: poset.ground.clone(),
        covers,
    }
}

/// How often a property moves in the requested direction along the cover
/// pairs of the positional order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub property: String,
    pub orientation: Orientation,
    /// Cover pairs where both values were present.
    pub checked: usize,
    pub monotone: usize,
    pub fraction: f64,
    /// Same-group covers (down a column): checked and monotone.
    pub column_pairs: (usize, usize),
    /// Same-period covers (across a row): checked and monotone.
    pub row_pairs: (usize, usize),
    pub violations: Vec<(String, String)>,
}

/// Scores non-strict monotonicity of `property` along positional covers.
/// The pseudo-property `Z` stands for the atomic number.
pub fn monotonicity_report(
    table: &PropertyTable,
    property: &str,
    orientation: Orientation,
    layout: &LayoutFixture,
) -> Result<MonotonicityReport> {
    let column = if property == "Z" {
        None
    } else {
        Some(table.property_index(property)?)
    };
    let symbols = table.symbols();
    let members: Vec<&str> = symbols.iter().map(String::as_str).collect();
    let positional = positional_poset(layout, &members)?;
    if positional.poset.is_empty() {
        return Err(Error::InvalidArgument(
            "no element has a table position".into(),
        ));
    }
    let value = |symbol: &str| -> Option<f64> {
        let e = table.element(symbol)?;
        match column {
            None => Some(f64::from(e.atomic_number)),
            Some(c) => e.values[c],
        }
    };
    let diagram = hasse(&positional.poset);
    let mut report = MonotonicityReport {
        property: property.to_string(),
        orientation,
        checked: 0,
        monotone: 0,
        fraction: 1.0,
        column_pairs: (0, 0),
        row_pairs: (0, 0),
        violations: Vec::new(),
    };
    for (a, b) in diagram.cover_names() {
        let (Some(va), Some(vb)) = (value(a), value(b)) else {
            continue;
        };
        let ok = match orientation {
            Orientation::Ascending => va <= vb,
            Orientation::Descending => va >= vb,
        };
        let ca = layout.coordinates_of(a)?;
        let cb = layout.coordinates_of(b)?;
        report.checked += 1;
        let axis = if ca.group == cb.group {
            Some(&mut report.column_pairs)
        } else if ca.period == cb.period {
            Some(&mut report.row_pairs)
        } else {
            None
        };
        if let Some(axis) = axis {
            axis.0 += 1;
            axis.1 += usize::from(ok);
        }
        if ok {
            report.monotone += 1;
        } else {
            report.violations.push((a.to_string(), b.to_string()));
        }
    }
    if report.checked > 0 {
        report.fraction = report.monotone as f64 / report.checked as f64;
    }
    Ok(report)
}

pub const LINEAR_EXTENSION_LIMIT: usize = 10;

/// Number of linear extensions, by dynamic programming over down-sets.
pub fn linear_extension_count(poset: &Poset) -> Result<u64> {
    let n = poset.len();
    if n > LINEAR_EXTENSION_LIMIT {
        return Err(Error::TooLarge(n, LINEAR_EXTENSION_LIMIT));
    }
    // predecessors[i]: strict lower set of i as a bitmask
    let predecessors: Vec<u32> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| poset.less(j, i))
                .fold(0, |m, j| m | 1 << j)
        })
        .collect();
    let full = (1u32 << n) - 1;
    let mut ways = vec![0u64; 1 << n];
    ways[0] = 1;
    for placed in 0..=full {
        if ways[placed as usize] == 0 {
            continue;
        }
        for (i, &preds) in predecessors.iter().enumerate() {
            let bit = 1 << i;
            if placed & bit == 0 && preds & !placed == 0 {
                ways[(placed | bit) as usize] += ways[placed as usize];
            }
        }
    }
    Ok(ways[full as usize])
}
