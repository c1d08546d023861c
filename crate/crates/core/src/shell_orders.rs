//! Shell-filling orders: Madelung `(n+l, n)`, hydrogenic `(n, l)`, and the
//! one-parameter family of ray orders interpolating between them.
//!
//! A ray order with slope `k <= -1` ranks shells by `n + beta*l` with
//! `beta = -1/k`, breaking ties toward the smaller `n`. At `k = -1` it
//! coincides with Madelung; as `k -> -inf` it approaches hydrogenic.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

const LETTERS: &[u8] = b"spdfghiklmnoqrtuvwxyz";

/// An electron subshell `(n, l)` with `0 <= l < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shell {
    n: u32,
    l: u32,
}

impl Shell {
    pub fn new(n: u32, l: u32) -> Result<Self> {
        if n == 0 || l >= n {
            return Err(Error::InvalidShell {
                n: i64::from(n),
                l: i64::from(l),
            });
        }
        Ok(Self { n, l })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn l(self) -> u32 {
        self.l
    }

    /// Electrons the subshell holds when full: `2(2l+1)`.
    pub fn capacity(self) -> u32 {
        2 * (2 * self.l + 1)
    }

    /// The shell moved by `(dn, dl)`, if still valid.
    pub fn shifted(self, dn: i64, dl: i64) -> Result<Self> {
        let n = i64::from(self.n) + dn;
        let l = i64::from(self.l) + dl;
        if n < 1 || l < 0 || l >= n || n > i64::from(u32::MAX) {
            return Err(Error::InvalidShell { n, l });
        }
        Ok(Self {
            n: n as u32,
            l: l as u32,
        })
    }
}

impl fmt::Display for Shell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match LETTERS.get(self.l as usize) {
            Some(&c) => write!(f, "{}{}", self.n, c as char),
            None => write!(f, "{}[l={}]", self.n, self.l),
        }
    }
}

impl FromStr for Shell {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("`{s}` is not a shell label"));
        let digits = s.find(|c: char| !c.is_ascii_digit()).ok_or_else(bad)?;
        let n: u32 = s[..digits].parse().map_err(|_| bad())?;
        let rest = &s[digits..];
        let l = if let Some(inner) = rest.strip_prefix("[l=").and_then(|r| r.strip_suffix(']')) {
            inner.parse().map_err(|_| bad())?
        } else if rest.len() == 1 {
            LETTERS
                .iter()
                .position(|&c| c == rest.as_bytes()[0])
                .ok_or_else(bad)? as u32
        } else {
            return Err(bad());
        };
        Shell::new(n, l)
    }
}

impl Serialize for Shell {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Which member of the family of shell orders to use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrderParameter {
    Madelung,
    Hydrogenic,
    /// Ray of slope `k`, finite and `<= -1`.
    Ray {
        slope: f64,
    },
}

impl OrderParameter {
    pub fn ray(slope: f64) -> Result<Self> {
        if !slope.is_finite() || slope > -1.0 {
            return Err(Error::InvalidOrder(format!(
                "ray slope must be finite and <= -1, got {slope}"
            )));
        }
        Ok(Self::Ray { slope })
    }

    /// Weight of `l` in the ranking functional; `None` for hydrogenic.
    pub fn beta(self) -> Option<f64> {
        match self {
            Self::Madelung => Some(1.0),
            Self::Hydrogenic => None,
            Self::Ray { slope } => Some(-1.0 / slope),
        }
    }
}

impl fmt::Display for OrderParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Madelung => f.write_str("madelung"),
            Self::Hydrogenic => f.write_str("hydrogenic"),
            Self::Ray { slope } => write!(f, "ray:{slope}"),
        }
    }
}

impl FromStr for OrderParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "madelung" => Ok(Self::Madelung),
            "hydrogenic" => Ok(Self::Hydrogenic),
            _ => {
                let slope = s
                    .strip_prefix("ray:")
                    .and_then(|k| k.parse::<f64>().ok())
                    .ok_or_else(|| {
                        Error::InvalidOrder(format!(
                            "expected madelung, hydrogenic or ray:K, got `{s}`"
                        ))
                    })?;
                Self::ray(slope)
            }
        }
    }
}

/// Compares two shells under `order`. `Equal` only for identical shells.
pub fn compare(order: OrderParameter, a: Shell, b: Shell) -> Ordering {
    let (an, al) = (i64::from(a.n), i64::from(a.l));
    let (bn, bl) = (i64::from(b.n), i64::from(b.l));
    match order {
        OrderParameter::Madelung => (an + al, an).cmp(&(bn + bl, bn)).then(al.cmp(&bl)),
        OrderParameter::Hydrogenic => (an, al).cmp(&(bn, bl)),
        OrderParameter::Ray { slope } => {
            // sign of f(a) - f(b) = dn - dl/k, scaled by -k > 0
            let dn = an - bn;
            let dl = al - bl;
            let scaled = dl as f64 - slope * dn as f64;
            scaled
                .partial_cmp(&0.0)
                .unwrap_or(Ordering::Equal)
                .then(dn.cmp(&0))
                .then(dl.cmp(&0))
        }
    }
}

/// The first `count` shells under `order`.
pub fn enumerate_shells(order: OrderParameter, count: usize) -> Vec<Shell> {
    // every order ranks (n, l) no earlier than (n, 0), and 1s..(count)s are
    // already `count` shells, so nothing with n > count can make the cut
    let max_n = count as u32;
    let mut pool: Vec<Shell> = (1..=max_n)
        .flat_map(|n| (0..n).map(move |l| Shell { n, l }))
        .collect();
    pool.sort_by(|&a, &b| compare(order, a, b));
    pool.truncate(count);
    pool
}

/// Whether the comparison of `a` and `b` survives translating both by `shift`.
pub fn local_order_holds(
    order: OrderParameter,
    a: Shell,
    b: Shell,
    shift: (i64, i64),
) -> Result<bool> {
    let sa = a.shifted(shift.0, shift.1)?;
    let sb = b.shifted(shift.0, shift.1)?;
    Ok(compare(order, a, b) == compare(order, sa, sb))
}

/// Occupied subshells in filling order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Configuration {
    pub shells: Vec<(Shell, u32)>,
    pub electrons: u32,
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (shell, occupancy)) in self.shells.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{shell}{occupancy}")?;
        }
        Ok(())
    }
}

/// Idealized ground-state configuration: shells are filled to capacity in
/// enumeration order until `z` electrons are placed.
pub fn aufbau_configuration(z: u32, order: OrderParameter) -> Result<Configuration> {
    if z == 0 {
        return Err(Error::InvalidArgument("Z must be at least 1".into()));
    }
    let mut count = 8;
    let shells = loop {
        let shells = enumerate_shells(order, count);
        let capacity: u64 = shells.iter().map(|s| u64::from(s.capacity())).sum();
        if capacity >= u64::from(z) {
            break shells;
        }
        count *= 2;
    };
    let mut remaining = z;
    let mut filled = Vec::new();
    for shell in shells {
        if remaining == 0 {
            break;
        }
        let occupancy = remaining.min(shell.capacity());
        filled.push((shell, occupancy));
        remaining -= occupancy;
    }
    Ok(Configuration {
        shells: filled,
        electrons: z,
    })
}

/// Where a period ends: the last shell filled and the running electron count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PeriodClosure {
    pub last_shell: Shell,
    pub electrons: u64,
}

/// Period ends, one per period. A period closes right before the first shell
/// of a principal level that has not been started yet. Under Madelung this is
/// the completion of a p shell (or 1s); under hydrogenic it is the completion
/// of a whole level.
pub fn period_closures(order: OrderParameter, num_periods: usize) -> Vec<PeriodClosure> {
    // all shells with n <= num_periods + 1 bring in the opening shell of the
    // level after the last period
    let levels = num_periods + 1;
    let shells = enumerate_shells(order, levels * (levels + 1) / 2);
    let mut closures = Vec::with_capacity(num_periods);
    let mut max_started = 0;
    let mut electrons = 0u64;
    let mut previous: Option<Shell> = None;
    for shell in shells {
        if shell.n > max_started {
            if let Some(last_shell) = previous {
                closures.push(PeriodClosure {
                    last_shell,
                    electrons,
                });
                if closures.len() == num_periods {
                    break;
                }
            }
            max_started = shell.n;
        }
        electrons += u64::from(shell.capacity());
        previous = Some(shell);
    }
    closures
}

/// Lengths of the first `num_periods` periods built under `order`.
pub fn period_lengths(order: OrderParameter, num_periods: usize) -> Vec<u64> {
    let mut last = 0;
    period_closures(order, num_periods)
        .into_iter()
        .map(|c| {
            let length = c.electrons - last;
            last = c.electrons;
            length
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(label: &str) -> Shell {
        label.parse().unwrap()
    }

    fn labels(shells: &[Shell]) -> String {
        shells
            .iter()
            .map(Shell::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }

    #[test]
    fn shell_validation() {
        assert!(Shell::new(1, 0).is_ok());
        assert!(Shell::new(1, 1).is_err());
        assert!(Shell::new(0, 0).is_err());
        assert_eq!(s("3d"), Shell::new(3, 2).unwrap());
        assert_eq!(Shell::new(5, 4).unwrap().to_string(), "5g");
        assert_eq!(Shell::new(9, 7).unwrap().to_string(), "9k");
        assert!("2j".parse::<Shell>().is_err());
        assert!("1p".parse::<Shell>().is_err());
        let big = Shell::new(30, 25).unwrap();
        assert_eq!(big.to_string().parse::<Shell>().unwrap(), big);
    }

    #[test]
    fn pairwise_examples() {
        let ray = OrderParameter::ray(-2.0).unwrap();
        assert_eq!(
            compare(OrderParameter::Madelung, s("4s"), s("3d")),
            Ordering::Less
        );
        assert_eq!(
            compare(OrderParameter::Hydrogenic, s("3d"), s("4s")),
            Ordering::Less
        );
        assert_eq!(compare(ray, s("3d"), s("4s")), Ordering::Less);
        assert_eq!(compare(ray, s("3d"), s("3d")), Ordering::Equal);
    }

    #[test]
    fn order_parsing() {
        assert_eq!(
            "madelung".parse::<OrderParameter>().unwrap(),
            OrderParameter::Madelung
        );
        assert_eq!(
            "ray:-1.5".parse::<OrderParameter>().unwrap(),
            OrderParameter::Ray { slope: -1.5 }
        );
        assert!("ray:-0.5".parse::<OrderParameter>().is_err());
        assert!("ray:inf".parse::<OrderParameter>().is_err());
        assert!("bohr".parse::<OrderParameter>().is_err());
        assert_eq!(OrderParameter::ray(-4.0).unwrap().beta(), Some(0.25));
    }

    #[test]
    fn enumerations() {
        assert_eq!(
            labels(&enumerate_shells(OrderParameter::Madelung, 14)),
            "1s 2s 2p 3s 3p 4s 3d 4p 5s 4d 5p 6s 4f 5d"
        );
        assert_eq!(
            labels(&enumerate_shells(OrderParameter::Hydrogenic, 10)),
            "1s 2s 2p 3s 3p 3d 4s 4p 4d 4f"
        );
        assert_eq!(
            labels(&enumerate_shells(OrderParameter::ray(-2.0).unwrap(), 8)),
            "1s 2s 2p 3s 3p 3d 4s 4p"
        );
    }

    #[test]
    fn local_order_examples() {
        let m = OrderParameter::Madelung;
        assert!(local_order_holds(m, s("2s"), s("2p"), (1, 0)).unwrap());
        assert!(local_order_holds(m, s("4s"), s("3d"), (1, 0)).unwrap());
        assert!(local_order_holds(m, s("1s"), s("2p"), (0, 1)).is_err());
    }

    #[test]
    fn aufbau_examples() {
        let m = OrderParameter::Madelung;
        assert_eq!(aufbau_configuration(2, m).unwrap().to_string(), "1s2");
        assert_eq!(
            aufbau_configuration(19, m).unwrap().to_string(),
            "1s2 2s2 2p6 3s2 3p6 4s1"
        );
        assert_eq!(
            aufbau_configuration(19, OrderParameter::Hydrogenic)
                .unwrap()
                .to_string(),
            "1s2 2s2 2p6 3s2 3p6 3d1"
        );
        assert!(aufbau_configuration(0, m).is_err());
    }

    #[test]
    fn period_length_examples() {
        assert_eq!(
            period_lengths(OrderParameter::Madelung, 8),
            [2, 8, 8, 18, 18, 32, 32, 50]
        );
        assert_eq!(
            period_lengths(OrderParameter::Hydrogenic, 4),
            [2, 8, 18, 32]
        );
        assert_eq!(period_lengths(OrderParameter::Madelung, 1), [2]);
    }

    #[test]
    fn madelung_periods_close_on_p_shells() {
        let closures = period_closures(OrderParameter::Madelung, 8);
        assert_eq!(closures[0].last_shell, s("1s"));
        for c in &closures[1..] {
            assert_eq!(c.last_shell.l(), 1, "{}", c.last_shell);
        }
    }
}
