//! Cartan types and their standard ambient lattice models.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::{q, qi, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A simple compact simply connected group, identified by its Cartan type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank > 8 {
            return Err(Error::RankTooLarge(rank));
        }
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InvalidType(format!("{family:?}{rank}")))
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Dimension of the ambient space of the lattice model.
    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::E => 8,
            Family::G => 3,
            _ => self.rank,
        }
    }

    /// Squared ambient length of a long root divided by 2.
    pub fn kappa(&self) -> Q {
        match self.family {
            Family::C => qi(2),
            Family::G => qi(3),
            _ => qi(1),
        }
    }

    /// Simple roots in the ambient model, Bourbaki numbering.
    pub fn simple_roots(&self) -> Vec<Vec<Q>> {
        let m = self.ambient_dim();
        let n = self.rank;
        let e = |i: usize| -> Vec<Q> {
            let mut v = vec![qi(0); m];
            v[i] = qi(1);
            v
        };
        let comb = |terms: &[(usize, Q)]| -> Vec<Q> {
            let mut v = vec![qi(0); m];
            for (i, c) in terms {
                v[*i] += *c;
            }
            v
        };
        let diff = |i: usize, j: usize| comb(&[(i, qi(1)), (j, qi(-1))]);
        match self.family {
            Family::A => (0..n).map(|i| diff(i, i + 1)).collect(),
            Family::B => {
                let mut r: Vec<_> = (0..n - 1).map(|i| diff(i, i + 1)).collect();
                r.push(e(n - 1));
                r
            }
            Family::C => {
                let mut r: Vec<_> = (0..n - 1).map(|i| diff(i, i + 1)).collect();
                r.push(comb(&[(n - 1, qi(2))]));
                r
            }
            Family::D => {
                let mut r: Vec<_> = (0..n - 1).map(|i| diff(i, i + 1)).collect();
                r.push(comb(&[(n - 2, qi(1)), (n - 1, qi(1))]));
                r
            }
            Family::G => vec![diff(0, 1), comb(&[(0, qi(-2)), (1, qi(1)), (2, qi(1))])],
            Family::F => {
                let h = q(1, 2);
                vec![diff(1, 2), diff(2, 3), e(3), comb(&[(0, h), (1, -h), (2, -h), (3, -h)])]
            }
            Family::E => {
                let h = q(1, 2);
                let mut a1 = vec![-h; 8];
                a1[0] = h;
                a1[7] = h;
                let all = [
                    a1,
                    comb(&[(0, qi(1)), (1, qi(1))]),
                    diff(1, 0),
                    diff(2, 1),
                    diff(3, 2),
                    diff(4, 3),
                    diff(5, 4),
                    diff(6, 5),
                ];
                all[..n].to_vec()
            }
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::InvalidType(other.to_string())),
        }
    }
}

impl FromStr for CartanType {
    /// Parses `"A2"`, `"g2"`, `"E8"`.
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidType(s.to_string());
        let (head, tail) = s.split_at(s.char_indices().nth(1).map(|(i, _)| i).ok_or_else(bad)?);
        let family: Family = head.parse()?;
        let rank: usize = tail.parse().map_err(|_| bad())?;
        CartanType::new(family, rank)
    }
}
