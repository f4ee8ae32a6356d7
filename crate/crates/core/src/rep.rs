//! Weyl dimensions, Riemannian volumes of homogeneous spaces, and characters on
//! conjugacy classes.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lie::weights::{dominant_integral, format_weight, lambda_plus_rho};
use crate::lie::weyl::{coset_representatives, for_each_orbit_point};
use crate::lie::{AlcovePoint, RootSystem, WeylElement};
use crate::rational::{qi, Q};
use crate::real::{cone, creal, czero, phase, sin_pi_ratio, two_pi_i_pow, Real, C};

/// `dim V_lambda = prod <lambda + rho, alpha^vee> / <rho, alpha^vee>`, exactly.
pub fn weyl_dimension(rs: &RootSystem, lambda: &[i64]) -> Result<BigInt> {
    if lambda.len() != rs.rank {
        return Err(Error::Dimension(format!("weight needs {} labels", rs.rank)));
    }
    if lambda.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(format!("{lambda:?}")));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for a in &rs.positive_roots {
        num *= a.coroot.iter().zip(lambda).map(|(d, l)| d * (l + 1)).sum::<i64>();
        den *= a.coroot.iter().sum::<i64>();
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

pub fn weyl_dimension_real<T: Real>(rs: &RootSystem, lambda: &[i64]) -> Result<T> {
    let d = weyl_dimension(rs, lambda)?;
    Ok(match d.to_i64() {
        Some(v) => T::from_i64(v),
        None => T::from_f64(d.to_f64().unwrap_or(f64::INFINITY)),
    })
}

fn two_pi<T: Real>() -> T {
    T::from_i64(2) * T::pi()
}

/// `vol(G/T) = 1 / prod_{alpha > 0} 2 pi B*(alpha, rho)`.
pub fn vol_g_over_t<T: Real>(rs: &RootSystem) -> T {
    let rho = rs.rho();
    let mut v = T::one();
    for a in &rs.positive_roots {
        v *= two_pi::<T>() * T::from_ratio(&a.inner(&rho));
    }
    T::one() / v
}

/// `vol(K/T)` for the subgroup with positive roots `k_roots`, using `rho_K`.
pub fn vol_k_over_t<T: Real>(rs: &RootSystem, k_roots: &[usize]) -> T {
    let rho_k = rs.half_sum(k_roots);
    let mut v = T::one();
    for &i in k_roots {
        v *= two_pi::<T>() * T::from_ratio(&rs.positive_roots[i].inner(&rho_k));
    }
    T::one() / v
}

pub fn vol_g_over_k<T: Real>(rs: &RootSystem, k_roots: &[usize]) -> T {
    vol_g_over_t::<T>(rs) / vol_k_over_t::<T>(rs, k_roots)
}

/// `vol(T) = covolume of the coroot lattice`.
pub fn vol_t<T: Real>(rs: &RootSystem) -> T {
    rs.lattice_covolume()
}

pub fn vol_g<T: Real>(rs: &RootSystem) -> T {
    vol_g_over_t::<T>(rs) * vol_t::<T>(rs)
}

/// Symplectic volume of the coadjoint orbit through a weight `mu` (Dynkin labels) in the
/// closed dominant chamber: `prod_{B*(alpha, mu) > 0} 2 pi B*(alpha, mu) * vol(G/G_mu)`.
pub fn vol_coadjoint_orbit<T: Real>(rs: &RootSystem, mu: &[Q]) -> Result<T> {
    if mu.iter().any(|x| *x < Q::zero()) {
        return Err(Error::NotDominant(format_weight(mu)));
    }
    let mut stab = Vec::new();
    let mut prod = T::one();
    for (i, a) in rs.positive_roots.iter().enumerate() {
        let p = a.inner(mu);
        if p.is_zero() {
            stab.push(i);
        } else {
            prod *= two_pi::<T>() * T::from_ratio(&p);
        }
    }
    Ok(prod * vol_g_over_k::<T>(rs, &stab))
}

/// A conjugacy class `C = G . exp(mu)` with `mu` in the alcove, together with the data
/// needed to evaluate characters on it.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub mu: AlcovePoint,
    pub k_roots: Vec<usize>,
    /// `2 rho_K(mu)`, an integer; the class carries the sign `(-1)^(2 rho_K(mu))`.
    pub sign_exponent: i64,
    /// `u^{-1}` for the minimal coset representatives `u` of `W / W_K`.
    pub coset_inverses: Vec<WeylElement>,
}

impl ConjugacyClass {
    pub fn new(rs: &RootSystem, mu: AlcovePoint, budget: u64) -> Result<Self> {
        let k_roots = mu.stabilizer_roots(rs);
        let two_rho_k: Q = k_roots.iter().fold(Q::zero(), |s, &i| s + rs.positive_roots[i].eval(&mu.coords));
        debug_assert!(two_rho_k.is_integer());
        let reps = coset_representatives(rs, &k_roots, budget)?;
        let coset_inverses = reps.iter().map(|u| u.inverse(rs)).collect();
        Ok(ConjugacyClass { mu, k_roots, sign_exponent: two_rho_k.to_integer(), coset_inverses })
    }

    pub fn identity(rs: &RootSystem) -> Self {
        ConjugacyClass::new(rs, AlcovePoint::origin(rs), crate::lie::DEFAULT_WEYL_BUDGET).expect("identity class")
    }

    /// Real dimension of the class.
    pub fn dim(&self, rs: &RootSystem) -> usize {
        2 * (rs.num_positive_roots() - self.k_roots.len())
    }

    fn is_k_root(&self, i: usize) -> bool {
        self.k_roots.binary_search(&i).is_ok()
    }

    /// Riemannian volume `prod_{alpha(mu) not in Z} 2 sin(pi alpha(mu)) * vol(G/K)`.
    pub fn volume<T: Real>(&self, rs: &RootSystem) -> T {
        let mut v = vol_g_over_k::<T>(rs, &self.k_roots);
        for (i, a) in rs.positive_roots.iter().enumerate() {
            if !self.is_k_root(i) {
                v *= T::from_i64(2) * sin_pi_ratio::<T>(&a.eval(&self.mu.coords));
            }
        }
        v
    }

    /// `chi_lambda(C) / dim V_lambda` by the coset sum over `W / W_K`.
    pub fn char_ratio<T: Real>(&self, rs: &RootSystem, lambda: &[i64]) -> Result<C<T>> {
        let lr = lambda_plus_rho(&dominant_integral(&lambda.iter().map(|&x| qi(x)).collect::<Vec<_>>())?);
        let mut sum = czero::<T>();
        for w in &self.coset_inverses {
            let x = w.apply(&lr);
            let mut den = T::one();
            for (i, a) in rs.positive_roots.iter().enumerate() {
                if !self.is_k_root(i) {
                    den *= T::from_ratio(&a.inner(&x));
                }
            }
            let e: C<T> = phase(&rs.pair(&x, &self.mu.coords));
            sum = sum + e / creal(den);
        }
        let sign = if self.sign_exponent.rem_euclid(2) == 0 { T::one() } else { -T::one() };
        let pre = two_pi_i_pow::<T>(-(self.dim(rs) as i32) / 2) * creal(sign / self.volume::<T>(rs));
        Ok(pre * sum)
    }

    pub fn char_value<T: Real>(&self, rs: &RootSystem, lambda: &[i64]) -> Result<C<T>> {
        let d: T = weyl_dimension_real(rs, lambda)?;
        Ok(self.char_ratio::<T>(rs, lambda)? * creal(d))
    }
}

/// Weyl character formula at a regular point `mu` (coweight coordinates, not
/// necessarily in the alcove): alternating orbit sum over the Weyl denominator.
pub fn char_value_regular<T: Real>(rs: &RootSystem, lambda: &[i64], mu: &[Q], budget: u64) -> Result<C<T>> {
    let mut den = cone::<T>();
    for a in &rs.positive_roots {
        let t = a.eval(mu);
        if t.is_integer() {
            return Err(Error::SingularPoint(format!("alpha(mu) = {t} is an integer")));
        }
        den = den * C::new(T::zero(), T::from_i64(2) * sin_pi_ratio::<T>(&t));
    }
    let start: Vec<i64> = lambda.iter().map(|&x| x + 1).collect();
    let mut num = czero::<T>();
    for_each_orbit_point(rs, &start, budget, |p, depth| {
        let pq: Vec<Q> = p.iter().map(|&x| qi(x)).collect();
        let e: C<T> = phase(&rs.pair(&pq, mu));
        if depth % 2 == 0 {
            num = num + e;
        } else {
            num = num - e;
        }
    })?;
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::DEFAULT_WEYL_BUDGET;
    use crate::rational::q;
    use std::f64::consts::PI;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap(), qi(1)).unwrap()
    }

    #[test]
    fn dimensions() {
        let dim = |t: &str, l: &[i64]| weyl_dimension(&rs(t), l).unwrap().to_i64().unwrap();
        assert_eq!(dim("A2", &[1, 1]), 8);
        assert_eq!(dim("A2", &[2, 0]), 6);
        assert_eq!(dim("G2", &[1, 0]), 7);
        assert_eq!(dim("G2", &[0, 1]), 14);
        assert_eq!(dim("B2", &[1, 0]), 5);
        assert_eq!(dim("B2", &[0, 1]), 4);
        assert_eq!(dim("E8", &[0, 0, 0, 0, 0, 0, 0, 1]), 248);
        assert_eq!(dim("E6", &[1, 0, 0, 0, 0, 0]), 27);
        assert_eq!(dim("F4", &[0, 0, 0, 1]), 26);
    }

    #[test]
    fn su2_volumes() {
        let a1 = rs("A1");
        assert!((vol_g_over_t::<f64>(&a1) - 1.0 / (2.0 * PI)).abs() < 1e-16);
        assert!((vol_g::<f64>(&a1) - 2f64.sqrt() / (2.0 * PI)).abs() < 1e-16);
        // scale 4: |alpha|^2 = 1/2 on t*, alpha.rho = 1/4
        let a4 = RootSystem::new("A1".parse().unwrap(), qi(4)).unwrap();
        assert!((vol_g_over_t::<f64>(&a4) - 2.0 / PI).abs() < 1e-15);
        assert!((vol_g::<f64>(&a4) - 4.0 * 2f64.sqrt() / PI).abs() < 1e-14);
    }

    #[test]
    fn homogeneity_in_scale() {
        let c = q(7, 3);
        let g1 = rs("G2");
        let gc = RootSystem::new("G2".parse().unwrap(), c).unwrap();
        let ratio = vol_g::<f64>(&gc) / vol_g::<f64>(&g1);
        assert!((ratio - (7.0f64 / 3.0).powf(14.0 / 2.0)).abs() < 1e-10 * ratio);
    }

    #[test]
    fn coadjoint_orbit_of_rho_is_weyl_dimension_limit() {
        // vol(O_{lambda+rho}) = dim V_lambda
        let r = rs("B2");
        for l in [[0, 0], [2, 1], [3, 4]] {
            let lr: Vec<Q> = l.iter().map(|&x| qi(x + 1)).collect();
            let v: f64 = vol_coadjoint_orbit(&r, &lr).unwrap();
            let d: f64 = weyl_dimension_real(&r, &l).unwrap();
            assert!((v - d).abs() < 1e-12 * d);
        }
    }

    #[test]
    fn central_element_character() {
        let a1 = rs("A1");
        let c = ConjugacyClass::new(&a1, AlcovePoint::new(&a1, vec![qi(1)]).unwrap(), DEFAULT_WEYL_BUDGET).unwrap();
        for n in 0..6 {
            let r: C<f64> = c.char_ratio(&a1, &[n]).unwrap();
            let expect = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((r.re - expect).abs() < 1e-14 && r.im.abs() < 1e-14);
        }
    }

    #[test]
    fn lemma_agrees_with_weyl_formula_at_regular_points() {
        for t in ["A2", "G2", "B2"] {
            let r = rs(t);
            let mu = AlcovePoint::new(&r, vec![q(1, 7), q(1, 11)]).unwrap();
            let c = ConjugacyClass::new(&r, mu.clone(), DEFAULT_WEYL_BUDGET).unwrap();
            for l in [[0, 0], [1, 0], [2, 3]] {
                let a: C<f64> = c.char_value(&r, &l).unwrap();
                let b: C<f64> = char_value_regular(&r, &l, &mu.coords, DEFAULT_WEYL_BUDGET).unwrap();
                assert!((a - b).norm() < 1e-10 * (1.0 + b.norm()), "{t} {l:?} {a} {b}");
            }
        }
    }

    #[test]
    fn identity_class_gives_dimension() {
        let r = rs("G2");
        let c = ConjugacyClass::identity(&r);
        let v: C<f64> = c.char_value(&r, &[1, 1]).unwrap();
        assert!((v.re - weyl_dimension_real::<f64>(&r, &[1, 1]).unwrap()).abs() < 1e-9);
    }
}
