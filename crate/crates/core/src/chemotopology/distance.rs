use std::collections::HashSet;

use serde::Serialize;

use crate::element_data::StandardizedMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    #[default]
    Euclidean,
    Manhattan,
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(Self::Euclidean),
            "manhattan" => Ok(Self::Manhattan),
            _ => Err(Error::InvalidArgument(format!("unknown metric `{s}`"))),
        }
    }
}

impl Metric {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Self::Euclidean => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt(),
            Self::Manhattan => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
        }
    }
}

/// Symmetric, non-negative dissimilarities with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    ids: Vec<String>,
    values: Vec<f64>,
}

impl DistanceMatrix {
    /// `values` is row-major `n x n`.
    pub fn new(ids: Vec<String>, values: Vec<f64>) -> Result<Self> {
        let n = ids.len();
        if values.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "{} values for {n} items",
                values.len()
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = ids.iter().find(|id| !seen.insert(id.as_str())) {
            return Err(Error::InvalidArgument(format!(
                "duplicate identifier `{dup}`"
            )));
        }
        for i in 0..n {
            if values[i * n + i] != 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "nonzero diagonal at `{}`",
                    ids[i]
                )));
            }
            for j in 0..n {
                let d = values[i * n + j];
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "distance {d} between `{}` and `{}`",
                        ids[i], ids[j]
                    )));
                }
                if d != values[j * n + i] {
                    return Err(Error::InvalidArgument(format!(
                        "asymmetric distances between `{}` and `{}`",
                        ids[i], ids[j]
                    )));
                }
            }
        }
        Ok(Self { ids, values })
    }

    /// Builds a matrix from a closure over index pairs `i < j`.
    pub fn from_fn(ids: Vec<String>, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let n = ids.len();
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = f(i, j);
                values[i * n + j] = d;
                values[j * n + i] = d;
            }
        }
        Self::new(ids, values)
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ids.len() + j]
    }

    /// The same distances with rows and columns reordered so that new row
    /// `k` is old row `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let ids = order.iter().map(|&i| self.ids[i].clone()).collect();
        Self::from_fn(ids, |a, b| self.get(order[a], order[b]))
    }
}

/// A distance matrix and the rows left out for missing values.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceOutcome {
    pub matrix: DistanceMatrix,
    pub excluded: Vec<String>,
}

/// Pairwise distances between the rows of `data` that have no missing value.
pub fn distance_matrix(data: &StandardizedMatrix, metric: Metric) -> Result<DistanceOutcome> {
    let mut ids = Vec::new();
    let mut rows = Vec::new();
    let mut excluded = Vec::new();
    for (id, row) in data.rows.iter().zip(&data.values) {
        match row.iter().copied().collect::<Option<Vec<f64>>>() {
            Some(values) => {
                ids.push(id.clone());
                rows.push(values);
            }
            None => excluded.push(id.clone()),
        }
    }
    if ids.len() < 2 {
        return Err(Error::TooFewItems {
            needed: 2,
            got: ids.len(),
        });
    }
    let matrix = DistanceMatrix::from_fn(ids, |i, j| metric.distance(&rows[i], &rows[j]))?;
    Ok(DistanceOutcome { matrix, excluded })
}
