//! Integer sequences attached to the lengths of the periods, and the two
//! nineteenth-century fits for atomic weights and atomic volumes.
//!
//! Everything except [`mills_weight`] and [`tchitcherin_volume`] is exact
//! integer arithmetic.

use std::num::NonZeroU32;

use serde::Serialize;

use crate::error::{Error, Result};

/// 1-based period (or electronic level) number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PeriodIndex(NonZeroU32);

impl PeriodIndex {
    pub fn new(n: u32) -> Result<Self> {
        NonZeroU32::new(n)
            .map(Self)
            .ok_or_else(|| Error::InvalidArgument("period index must be at least 1".into()))
    }

    pub fn get(self) -> u32 {
        self.0.get()
    }
}

impl TryFrom<u32> for PeriodIndex {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        Self::new(n)
    }
}

/// `c_n = 2 * floor((n + 2) / 2)^2`: 2, 8, 8, 18, 18, 32, 32, 50, ...
pub fn period_cardinality(n: PeriodIndex) -> u128 {
    let half = (u128::from(n.get()) + 2) / 2;
    2 * half * half
}

/// Number of elements up to and including period `n`.
pub fn accumulated_elements(n: PeriodIndex) -> u128 {
    (1..=n.get())
        .map(|k| period_cardinality(PeriodIndex(NonZeroU32::new(k).unwrap())))
        .sum()
}

/// `2n^2`, the capacity of electronic level `n`.
pub fn shell_capacity(n: PeriodIndex) -> u128 {
    let n = u128::from(n.get());
    2 * n * n
}

/// `t_n = n(n+1)/2`, with `t_0 = 0`.
pub fn triangular(n: u64) -> u128 {
    let n = u128::from(n);
    n * (n + 1) / 2
}

/// `(t_{k-1}, t_k, k^2)`; the two triangular numbers sum to the square.
pub fn square_as_adjacent_triangulars(k: u64) -> Result<(u128, u128, u128)> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let square = u128::from(k) * u128::from(k);
    Ok((triangular(k - 1), triangular(k), square))
}

/// Noble-gas atomic numbers from the closed form
/// `((-1)^n (3n+6) + 2n^3 + 12n^2 + 25n - 6) / 12`.
///
/// The division is exact for every `n >= 1`; a remainder is reported as an
/// invariant failure instead of being rounded away.
pub fn weise_noble_gas(n: PeriodIndex) -> Result<u128> {
    let n = i128::from(n.get());
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let numerator = sign * (3 * n + 6) + 2 * n * n * n + 12 * n * n + 25 * n - 6;
    if numerator % 12 != 0 {
        return Err(Error::Invariant(format!(
            "noble-gas closed form not divisible by 12 at n={n}"
        )));
    }
    u128::try_from(numerator / 12)
        .map_err(|_| Error::Invariant(format!("negative noble-gas count at n={n}")))
}

/// Mills' atomic weight fit `15(n - 0.9375^t)`.
pub fn mills_weight(n: u32, t: u32) -> Result<f64> {
    if n == 0 || t == 0 {
        return Err(Error::InvalidArgument(
            "Mills parameters must be positive".into(),
        ));
    }
    Ok(15.0 * (f64::from(n) - 0.9375_f64.powi(t as i32)))
}

/// Tchitchérin's atomic volume relation `A(2 - 0.00535 A n)`.
pub fn tchitcherin_volume(atomic_weight: f64, n: u32) -> Result<f64> {
    if !(atomic_weight > 0.0 && atomic_weight.is_finite()) || n == 0 {
        return Err(Error::InvalidArgument(
            "atomic weight must be positive and n at least 1".into(),
        ));
    }
    Ok(atomic_weight * (2.0 - 0.00535 * atomic_weight * f64::from(n)))
}

/// One row of the sequence table emitted by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SequenceRow {
    pub n: u32,
    pub cardinality: u128,
    pub accumulated: u128,
    pub shell_capacity: u128,
    pub triangular: u128,
    pub noble_gas: u128,
}

pub fn sequence_table(max: u32) -> Result<Vec<SequenceRow>> {
    let mut rows = Vec::with_capacity(max as usize);
    let mut accumulated = 0;
    for k in 1..=max {
        let n = PeriodIndex::new(k)?;
        accumulated += period_cardinality(n);
        rows.push(SequenceRow {
            n: k,
            cardinality: period_cardinality(n),
            accumulated,
            shell_capacity: shell_capacity(n),
            triangular: triangular(u64::from(k)),
            noble_gas: weise_noble_gas(n)?,
        });
    }
    Ok(rows)
}
