//! Points of the fundamental alcove, which parametrise conjugacy classes of G.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lie::weights::format_weight;
use crate::lie::RootSystem;
use crate::rational::{qi, Q};

/// A point `mu` of t in fundamental-coweight coordinates `a_i = alpha_i(mu)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlcovePoint {
    pub coords: Vec<Q>,
}

impl AlcovePoint {
    /// Validates `a_i >= 0` and `alpha_max(mu) <= 1`.
    pub fn new(rs: &RootSystem, coords: Vec<Q>) -> Result<Self> {
        if coords.len() != rs.rank {
            return Err(Error::Dimension(format!("alcove point needs {} coordinates", rs.rank)));
        }
        let top = rs.positive_roots[rs.highest_root].eval(&coords);
        if coords.iter().any(|a| a.is_negative()) || top > Q::one() {
            return Err(Error::OutsideAlcove(format_weight(&coords)));
        }
        Ok(AlcovePoint { coords })
    }

    pub fn origin(rs: &RootSystem) -> Self {
        AlcovePoint { coords: vec![Q::zero(); rs.rank] }
    }

    /// The alcove point conjugate to `exp(mu)` for an arbitrary `mu` (affine Weyl reduction).
    pub fn reduce(rs: &RootSystem, mu: &[Q]) -> Self {
        let mut a = mu.to_vec();
        let top = &rs.positive_roots[rs.highest_root];
        loop {
            if let Some(i) = a.iter().position(|x| x.is_negative()) {
                // s_i: a_j -> a_j - a_i A_ji
                let ai = a[i];
                for j in 0..rs.rank {
                    a[j] -= ai * qi(rs.cartan[j][i]);
                }
                continue;
            }
            let t = top.eval(&a);
            if t > Q::one() {
                // affine reflection in alpha_max = 1: mu -> mu - (alpha_max(mu) - 1) alpha_max^vee
                let shift = t - Q::one();
                let cv = &top.coroot;
                for j in 0..rs.rank {
                    let coroot_j: Q = (0..rs.rank).fold(Q::zero(), |s, k| s + qi(cv[k] * rs.cartan[j][k]));
                    a[j] -= shift * coroot_j;
                }
                continue;
            }
            return AlcovePoint { coords: a };
        }
    }

    /// Positive roots with `alpha(mu)` an integer: the roots of the centraliser K.
    pub fn stabilizer_roots(&self, rs: &RootSystem) -> Vec<usize> {
        (0..rs.num_positive_roots()).filter(|&i| rs.positive_roots[i].eval(&self.coords).is_integer()).collect()
    }

    pub fn is_regular(&self, rs: &RootSystem) -> bool {
        self.stabilizer_roots(rs).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap(), qi(1)).unwrap()
    }

    #[test]
    fn validation() {
        let r = rs("A2");
        assert!(AlcovePoint::new(&r, vec![q(1, 3), q(1, 3)]).is_ok());
        assert!(AlcovePoint::new(&r, vec![q(2, 3), q(1, 2)]).is_err());
        assert!(AlcovePoint::new(&r, vec![q(-1, 3), q(1, 2)]).is_err());
    }

    #[test]
    fn stabilizers() {
        let r = rs("A2");
        let center = AlcovePoint::new(&r, vec![q(1, 3), q(1, 3)]).unwrap();
        assert!(center.is_regular(&r));
        let edge = AlcovePoint::new(&r, vec![q(1, 2), q(1, 2)]).unwrap();
        assert_eq!(edge.stabilizer_roots(&r), vec![r.highest_root]);
        assert_eq!(AlcovePoint::origin(&r).stabilizer_roots(&r).len(), 3);
    }

    #[test]
    fn reduction_lands_in_alcove_and_preserves_phases() {
        let r = rs("G2");
        let mu = vec![q(-5, 7), q(9, 4)];
        let red = AlcovePoint::reduce(&r, &mu);
        assert!(AlcovePoint::new(&r, red.coords.clone()).is_ok());
        // the multiset of exp(2 pi i alpha(mu)) over all roots is a class invariant
        let frac = |x: Q| x - x.floor();
        let mut a: Vec<Q> = r.positive_roots.iter().flat_map(|al| [frac(al.eval(&mu)), frac(-al.eval(&mu))]).collect();
        let mut b: Vec<Q> =
            r.positive_roots.iter().flat_map(|al| [frac(al.eval(&red.coords)), frac(-al.eval(&red.coords))]).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}
