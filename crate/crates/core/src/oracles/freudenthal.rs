use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::weyl::{dominant_conjugate, for_each_orbit_point};
use crate::lie::RootSystem;
use crate::rational::{qi, Q};
use crate::real::{czero, phase, C};

/// Multiplicities of the dominant weights of `V_lambda` by Freudenthal's recursion.
pub fn dominant_multiplicities(rs: &RootSystem, lambda: &[i64]) -> Result<BTreeMap<Vec<i64>, i64>> {
    if lambda.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(format!("{lambda:?}")));
    }
    let r = rs.rank;
    // coefficients of lambda in the simple roots bound the search box
    let lq: Vec<Q> = lambda.iter().map(|&x| qi(x)).collect();
    let bound: Vec<i64> =
        (0..r).map(|j| (0..r).fold(Q::zero(), |s, i| s + lq[i] * rs.cartan_inv[i][j]).floor().to_integer()).collect();
    let mut candidates: Vec<(i64, Vec<i64>)> = Vec::new();
    let mut k = vec![0i64; r];
    'outer: loop {
        let mu: Vec<i64> = (0..r).map(|j| lambda[j] - (0..r).map(|i| k[i] * rs.cartan[i][j]).sum::<i64>()).collect();
        if mu.iter().all(|&x| x >= 0) {
            candidates.push((k.iter().sum(), mu));
        }
        let mut i = 0;
        loop {
            if i == r {
                break 'outer;
            }
            k[i] += 1;
            if k[i] <= bound[i] {
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
    candidates.sort();
    let shifted = |v: &[i64]| -> Vec<Q> { v.iter().map(|&x| qi(x + 1)).collect() };
    let top = rs.norm2(&shifted(lambda));
    let mut mult: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (_, mu) in candidates {
        if mu == lambda {
            mult.insert(mu, 1);
            continue;
        }
        let mut num = Q::zero();
        for a in &rs.positive_roots {
            let mut nu = mu.clone();
            loop {
                for j in 0..r {
                    nu[j] += a.dynkin[j];
                }
                let dom = dominant_conjugate(rs, &nu);
                let Some(&m) = mult.get(&dom) else { break };
                let nuq: Vec<Q> = nu.iter().map(|&x| qi(x)).collect();
                num += qi(m) * a.inner(&nuq);
            }
        }
        let den = top - rs.norm2(&shifted(&mu));
        let m = qi(2) * num / den;
        debug_assert!(m.is_integer());
        if !m.is_zero() {
            mult.insert(mu, m.to_integer());
        }
    }
    Ok(mult)
}

/// Every weight of `V_lambda` with its multiplicity.
pub fn all_weights(rs: &RootSystem, lambda: &[i64], budget: u64) -> Result<Vec<(Vec<i64>, i64)>> {
    let mut out = Vec::new();
    for (mu, m) in dominant_multiplicities(rs, lambda)? {
        for_each_orbit_point(rs, &mu, budget, |p, _| out.push((p.to_vec(), m)))?;
    }
    out.sort();
    Ok(out)
}

/// `chi_lambda(exp mu)` as the multiplicity-weighted sum of weight phases.
pub fn freudenthal_character(rs: &RootSystem, lambda: &[i64], mu: &[Q], budget: u64) -> Result<C<f64>> {
    let mut s = czero::<f64>();
    for (nu, m) in all_weights(rs, lambda, budget)? {
        let nq: Vec<Q> = nu.iter().map(|&x| qi(x)).collect();
        let e: C<f64> = phase(&rs.pair(&nq, mu));
        s += e * m as f64;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::DEFAULT_WEYL_BUDGET;
    use crate::rep::weyl_dimension;
    use num_traits::ToPrimitive;

    #[test]
    fn known_multiplicities() {
        let a2 = RootSystem::new("A2".parse().unwrap(), qi(1)).unwrap();
        let m = dominant_multiplicities(&a2, &[1, 1]).unwrap();
        assert_eq!(m.get(&vec![0, 0]), Some(&2));
        let g2 = RootSystem::new("G2".parse().unwrap(), qi(1)).unwrap();
        // adjoint of G2: zero weight has multiplicity 2, short roots 1
        let m = dominant_multiplicities(&g2, &[0, 1]).unwrap();
        assert_eq!(m.get(&vec![0, 0]), Some(&2));
        assert_eq!(m.get(&vec![1, 0]), Some(&1));
    }

    #[test]
    fn total_multiplicity_is_dimension() {
        for (t, l) in [("B2", vec![2, 1]), ("G2", vec![1, 1]), ("A3", vec![1, 0, 2]), ("C3", vec![0, 1, 1])] {
            let rs = RootSystem::new(t.parse().unwrap(), qi(1)).unwrap();
            let total: i64 = all_weights(&rs, &l, DEFAULT_WEYL_BUDGET).unwrap().iter().map(|(_, m)| m).sum();
            assert_eq!(total, weyl_dimension(&rs, &l).unwrap().to_i64().unwrap(), "{t}");
        }
    }
}
