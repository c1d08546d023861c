//! Positional similarity patterns of the table, and how well a dendrogram
//! bears them out.

mod pettifor;

use serde::Serialize;

use crate::chemotopology::{select_cut, Dendrogram};
use crate::element_data::LayoutFixture;
use crate::error::{Error, Result};

pub use pettifor::{
    pettifor_rank, pettifor_scale, structure_map, MapPoint, PettiforScale, RowError, StructureMap,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    /// `(g, m)` with `(g+1, m+1)`.
    Diagonal,
    /// `(g, m)` with `(g+2, m+1)`, same oxidation state.
    KnightsMove,
    /// `(g, m)` with `(g, m+2)`.
    SecondaryPeriodicity,
}

impl PatternKind {
    pub fn offset(self) -> (u8, u8) {
        match self {
            Self::Diagonal => (1, 1),
            Self::KnightsMove => (2, 1),
            Self::SecondaryPeriodicity => (0, 2),
        }
    }

    /// Qualifier the pattern carries but this crate does not check.
    pub fn qualifier(self) -> Option<&'static str> {
        match self {
            Self::KnightsMove => Some("same oxidation state"),
            _ => None,
        }
    }
}

impl std::str::FromStr for PatternKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "diagonal" => Ok(Self::Diagonal),
            "knights_move" | "knights-move" => Ok(Self::KnightsMove),
            "secondary_periodicity" | "secondary-periodicity" => Ok(Self::SecondaryPeriodicity),
            _ => Err(Error::InvalidArgument(format!("unknown pattern `{s}`"))),
        }
    }
}

/// Two members whose cells differ by the pattern's offset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternPair {
    pub kind: PatternKind,
    pub first: String,
    pub first_cell: (u8, u8),
    pub second: String,
    pub second_cell: (u8, u8),
}

/// Members with a group, as `(symbol, (group, period))`, in input order.
fn main_block<'a>(layout: &LayoutFixture, members: &[&'a str]) -> Result<Vec<(&'a str, (u8, u8))>> {
    let mut out = Vec::new();
    for &m in members {
        let c = layout.coordinates_of(m)?;
        if let Some(g) = c.group {
            out.push((m, (g, c.period)));
        }
    }
    Ok(out)
}

fn offset_pairs(
    kind: PatternKind,
    layout: &LayoutFixture,
    members: &[&str],
    first_periods: Option<&[u8]>,
) -> Result<Vec<PatternPair>> {
    let cells = main_block(layout, members)?;
    let (dg, dp) = kind.offset();
    let mut pairs = Vec::new();
    for &(a, (g, p)) in &cells {
        if first_periods.is_some_and(|allowed| !allowed.contains(&p)) {
            continue;
        }
        for &(b, cell) in &cells {
            if cell == (g + dg, p + dp) {
                pairs.push(PatternPair {
                    kind,
                    first: a.to_string(),
                    first_cell: (g, p),
                    second: b.to_string(),
                    second_cell: cell,
                });
            }
        }
    }
    Ok(pairs)
}

/// Diagonal neighbours. Unless `widen` is set, only pairs starting in
/// period 2 are produced.
pub fn diagonal_pairs(
    layout: &LayoutFixture,
    members: &[&str],
    widen: bool,
) -> Result<Vec<PatternPair>> {
    let periods: &[u8] = &[2];
    offset_pairs(
        PatternKind::Diagonal,
        layout,
        members,
        (!widen).then_some(periods),
    )
}

pub fn knights_move_pairs(layout: &LayoutFixture, members: &[&str]) -> Result<Vec<PatternPair>> {
    offset_pairs(PatternKind::KnightsMove, layout, members, None)
}

pub fn secondary_periodicity_pairs(
    layout: &LayoutFixture,
    members: &[&str],
) -> Result<Vec<PatternPair>> {
    offset_pairs(PatternKind::SecondaryPeriodicity, layout, members, None)
}

/// Period-2 members, expected to stand apart from the rest of their groups.
pub fn singularity_flags(layout: &LayoutFixture, members: &[&str]) -> Result<Vec<String>> {
    Ok(main_block(layout, members)?
        .into_iter()
        .filter(|(_, (_, p))| *p == 2)
        .map(|(s, _)| s.to_string())
        .collect())
}

/// Members of groups 13-16 from period 5 on. Oxidation states are not
/// modelled, so this only proposes candidates.
pub fn inert_pair_candidates(layout: &LayoutFixture, members: &[&str]) -> Result<Vec<String>> {
    Ok(main_block(layout, members)?
        .into_iter()
        .filter(|(_, (g, p))| (13..=16).contains(g) && *p >= 5)
        .map(|(s, _)| s.to_string())
        .collect())
}

/// When a pair counts as similar in a dendrogram.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimilarityPredicate {
    /// Cophenetic distance within the lowest `q` fraction of all leaf pairs.
    CopheneticQuantile(f64),
    /// Both members in the same cluster of the population-product cut.
    SelectedCut,
}

impl Default for SimilarityPredicate {
    fn default() -> Self {
        Self::CopheneticQuantile(0.25)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairVerdict {
    pub first: String,
    pub second: String,
    pub cophenetic: f64,
    pub confirmed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PatternScore {
    /// Confirmed pairs over all pairs; 0 when there are no pairs.
    pub fraction: f64,
    pub verdicts: Vec<PairVerdict>,
}

/// Nearest-rank `q`-quantile of the cophenetic distances over all leaf pairs.
pub fn cophenetic_quantile(dendrogram: &Dendrogram, q: f64) -> Result<f64> {
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "quantile {q} outside (0, 1]"
        )));
    }
    let n = dendrogram.len();
    if n < 2 {
        return Err(Error::TooFewItems { needed: 2, got: n });
    }
    let matrix = dendrogram.cophenetic_matrix();
    let mut values: Vec<f64> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| matrix[i * n + j])
        .collect();
    values.sort_by(f64::total_cmp);
    let rank = ((q * values.len() as f64).ceil() as usize).clamp(1, values.len());
    Ok(values[rank - 1])
}

type Confirm = Box<dyn Fn(&PatternPair, f64) -> bool>;

/// Scores how many pattern pairs the dendrogram groups together.
pub fn pattern_score(
    pairs: &[PatternPair],
    dendrogram: &Dendrogram,
    predicate: SimilarityPredicate,
) -> Result<PatternScore> {
    for p in pairs {
        for member in [&p.first, &p.second] {
            if dendrogram.leaf_index(member).is_none() {
                return Err(Error::UnknownElement(member.clone()));
            }
        }
    }
    let confirm: Confirm = match predicate {
        SimilarityPredicate::CopheneticQuantile(q) => {
            let threshold = cophenetic_quantile(dendrogram, q)?;
            Box::new(move |_, d| d <= threshold)
        }
        SimilarityPredicate::SelectedCut => {
            let cut = select_cut(dendrogram)?;
            Box::new(move |p, _| {
                cut.partition
                    .iter()
                    .any(|c| c.contains(&p.first) && c.contains(&p.second))
            })
        }
    };
    let verdicts: Vec<PairVerdict> = pairs
        .iter()
        .map(|p| {
            let cophenetic = dendrogram.cophenetic(&p.first, &p.second)?;
            Ok(PairVerdict {
                first: p.first.clone(),
                second: p.second.clone(),
                cophenetic,
                confirmed: confirm(p, cophenetic),
            })
        })
        .collect::<Result<_>>()?;
    let confirmed = verdicts.iter().filter(|v| v.confirmed).count();
    let fraction = if verdicts.is_empty() {
        0.0
    } else {
        confirmed as f64 / verdicts.len() as f64
    };
    Ok(PatternScore { fraction, verdicts })
}
