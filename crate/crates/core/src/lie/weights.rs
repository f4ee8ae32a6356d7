use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::lie::RootSystem;
use crate::rational::{qi, Q};

/// Dominant integral weights `lambda` with `|lambda + rho| <= radius`, sorted by
/// `|lambda + rho|` and then by Dynkin labels. Membership is decided in exact arithmetic.
pub fn dominant_weights_in_ball(rs: &RootSystem, radius: f64) -> Result<Vec<Vec<i64>>> {
    if !(radius.is_finite() && radius >= 0.0) {
        return Err(Error::InvalidSpec(format!("radius must be finite and non-negative, got {radius}")));
    }
    let r = BigRational::from_float(radius).expect("finite");
    let r2 = &r * &r;
    let rank = rs.rank;
    // <lambda + rho, alpha_i^vee> <= 2 R / |alpha_i|
    let bounds: Vec<i64> = (0..rank)
        .map(|i| {
            let norm = (rs.root_gram()[i][i]).to_f64_lossy().sqrt();
            ((2.0 * radius / norm).floor() as i64 - 1).max(-1)
        })
        .collect();
    if bounds.iter().any(|&b| b < 0) {
        return Ok(vec![]);
    }
    let mut out: Vec<(Q, Vec<i64>)> = Vec::new();
    let mut cur = vec![0i64; rank];
    loop {
        let shifted: Vec<Q> = cur.iter().map(|&x| qi(x + 1)).collect();
        let n2 = rs.norm2(&shifted);
        let n2b = BigRational::new(BigInt::from(*n2.numer()), BigInt::from(*n2.denom()));
        if n2b <= r2 {
            out.push((n2, cur.clone()));
        }
        let mut k = 0;
        loop {
            if k == rank {
                out.sort();
                return Ok(out.into_iter().map(|(_, w)| w).collect());
            }
            cur[k] += 1;
            if cur[k] <= bounds[k] {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

trait ToF64Lossy {
    fn to_f64_lossy(&self) -> f64;
}

impl ToF64Lossy for Q {
    fn to_f64_lossy(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// `|lambda + rho|` as a float, used as the summation ordering key.
pub fn shifted_norm(rs: &RootSystem, lambda: &[i64]) -> f64 {
    let v: Vec<Q> = lambda.iter().map(|&x| qi(x + 1)).collect();
    rs.norm2(&v).to_f64_lossy().sqrt()
}

pub fn to_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| qi(x)).collect()
}

pub fn lambda_plus_rho(lambda: &[i64]) -> Vec<Q> {
    lambda.iter().map(|&x| qi(x + 1)).collect()
}

pub fn is_dominant(lambda: &[Q]) -> bool {
    lambda.iter().all(|x| !x.is_negative())
}

pub fn is_integral(lambda: &[Q]) -> bool {
    lambda.iter().all(|x| x.is_integer())
}

/// Checks that a rational weight is dominant and integral and returns its labels.
pub fn dominant_integral(lambda: &[Q]) -> Result<Vec<i64>> {
    if !is_integral(lambda) {
        return Err(Error::NotIntegral(format_weight(lambda)));
    }
    if !is_dominant(lambda) {
        return Err(Error::NotDominant(format_weight(lambda)));
    }
    Ok(lambda.iter().map(|x| x.to_integer()).collect())
}

pub fn format_weight(lambda: &[Q]) -> String {
    let parts: Vec<String> = lambda.iter().map(crate::rational::format_rational).collect();
    format!("({})", parts.join(","))
}

pub fn f64_of(q: &Q) -> f64 {
    q.to_f64_lossy()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap(), qi(1)).unwrap()
    }

    #[test]
    fn a1_ball() {
        // |lambda + rho| = (n + 1) / sqrt 2
        let w = dominant_weights_in_ball(&rs("A1"), 3.0).unwrap();
        assert_eq!(w, vec![vec![0], vec![1], vec![2], vec![3]]);
        assert!(dominant_weights_in_ball(&rs("A1"), 0.5).unwrap().is_empty());
    }

    #[test]
    fn boundary_is_inclusive() {
        // |(0,0) + rho|^2 = 2 for A2
        let w = dominant_weights_in_ball(&rs("A2"), 2f64.sqrt()).unwrap();
        assert!(w.is_empty() || w == vec![vec![0, 0]]);
        let w = dominant_weights_in_ball(&rs("A2"), 1.5).unwrap();
        assert_eq!(w, vec![vec![0, 0]]);
    }

    #[test]
    fn sorted_by_norm_and_complete() {
        let r = rs("G2");
        let w = dominant_weights_in_ball(&r, 6.0).unwrap();
        let norms: Vec<f64> = w.iter().map(|l| shifted_norm(&r, l)).collect();
        assert!(norms.windows(2).all(|p| p[0] <= p[1] + 1e-15));
        // brute force over a generous box
        let mut count = 0;
        for a in 0..40 {
            for b in 0..40 {
                if shifted_norm(&r, &[a, b]) <= 6.0 {
                    count += 1;
                }
            }
        }
        assert_eq!(count, w.len());
    }
}
