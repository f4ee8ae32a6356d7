use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli_number(n: usize) -> BigRational {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=n {
        let mut s = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            s += BigRational::from_integer(binomial(BigInt::from(m + 1), BigInt::from(k))) * bk;
        }
        b.push(-s / big(m as i64 + 1));
    }
    b[n].clone()
}

/// Bernoulli polynomial `B_n(x)` at a rational point.
pub fn bernoulli_poly(n: usize, x: &BigRational) -> BigRational {
    let mut s = BigRational::zero();
    let mut xp = BigRational::one();
    let mut terms = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        terms.push(xp.clone());
        xp *= x;
    }
    for k in 0..=n {
        let c = BigRational::from_integer(binomial(BigInt::from(n), BigInt::from(k)));
        s += c * bernoulli_number(k) * &terms[n - k];
    }
    s
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `zeta(2m) = (-1)^(m+1) B_2m (2 pi)^2m / (2 (2m)!)`.
pub fn zeta_even(m: usize) -> f64 {
    let b = to_f64(&bernoulli_number(2 * m));
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    sign * b * (2.0 * std::f64::consts::PI).powi(2 * m as i32) / (2.0 * factorial(2 * m))
}

/// `sum_{n >= 1} sin(2 pi n t) / n^(2m-1)` for rational `t`, by the Bernoulli-polynomial
/// closed form on `[0, 1]` (valid for `m >= 2`, and for `m = 1` off the integers).
pub fn clausen_sin(t: &BigRational, m: usize) -> f64 {
    let frac = t - t.floor();
    let b = to_f64(&bernoulli_poly(2 * m - 1, &frac));
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    sign * (2.0 * std::f64::consts::PI).powi(2 * m as i32 - 1) * b / (2.0 * factorial(2 * m - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli_number(1), BigRational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(bernoulli_number(2), BigRational::new(BigInt::from(1), BigInt::from(6)));
        assert_eq!(bernoulli_number(12), BigRational::new(BigInt::from(-691), BigInt::from(2730)));
        assert!(bernoulli_number(7).is_zero());
    }

    #[test]
    fn zeta_values() {
        assert!((zeta_even(1) - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta_even(2) - PI.powi(4) / 90.0).abs() < 1e-14);
        assert!((zeta_even(3) - PI.powi(6) / 945.0).abs() < 1e-13);
    }

    #[test]
    fn clausen_matches_direct_sum() {
        for (p, q) in [(1i64, 3i64), (1, 4), (1, 6), (2, 5)] {
            let t = BigRational::new(BigInt::from(p), BigInt::from(q));
            let x = p as f64 / q as f64;
            for m in [2usize, 3] {
                let direct: f64 = (1..200_000).map(|n| (2.0 * PI * n as f64 * x).sin() / (n as f64).powi(2 * m as i32 - 1)).sum();
                assert!((clausen_sin(&t, m) - direct).abs() < 1e-9, "{p}/{q} m={m}");
            }
        }
    }
}
