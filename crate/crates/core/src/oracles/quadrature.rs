use num_complex::Complex;

use crate::error::{Error, Result};
use crate::lie::RootSystem;
use crate::real::C;

/// A class function given by its Fourier coefficients on T: weights (Dynkin labels)
/// with complex coefficients.
#[derive(Clone, Debug, Default)]
pub struct ClassFunction {
    pub terms: Vec<(Vec<i64>, C<f64>)>,
}

impl ClassFunction {
    pub fn from_weights(weights: &[(Vec<i64>, i64)]) -> Self {
        ClassFunction { terms: weights.iter().map(|(w, m)| (w.clone(), Complex::new(*m as f64, 0.0))).collect() }
    }

    fn bandwidth(&self, i: usize) -> i64 {
        self.terms.iter().map(|(w, _)| w[i].abs()).max().unwrap_or(0)
    }
}

/// `<f, g>` for the normalised Haar measure, by Weyl integration on an `mesh^r` grid of
/// the torus. The integrand is a trigonometric polynomial, so the rule is exact once the
/// mesh exceeds its bandwidth in each direction.
pub fn torus_quadrature_pairing(rs: &RootSystem, f: &ClassFunction, g: &ClassFunction, mesh: usize) -> Result<C<f64>> {
    let r = rs.rank;
    let bandwidth = (0..r)
        .map(|i| {
            f.bandwidth(i) + g.bandwidth(i) + rs.positive_roots.iter().map(|a| a.dynkin[i].abs()).sum::<i64>()
        })
        .max()
        .unwrap_or(0) as usize;
    if mesh <= bandwidth {
        return Err(Error::MeshTooCoarse { mesh, bandwidth });
    }
    let m = mesh as i64;
    let roots_of_unity: Vec<C<f64>> = (0..m)
        .map(|k| {
            let (s, c) = crate::real::Real::sin_cos_pi(2.0 * k as f64 / m as f64);
            Complex::new(c, s)
        })
        .collect();
    let eval = |h: &ClassFunction, theta: &[i64]| -> C<f64> {
        h.terms.iter().fold(Complex::new(0.0, 0.0), |s, (w, c)| {
            let e: i64 = w.iter().zip(theta).map(|(a, b)| a * b).sum();
            s + c * roots_of_unity[e.rem_euclid(m) as usize]
        })
    };
    let mut total = Complex::new(0.0, 0.0);
    let npts = (mesh as u64).pow(r as u32);
    let mut theta = vec![0i64; r];
    for _ in 0..npts {
        // |A|^2 with A = prod_{alpha > 0} (e^{i pi alpha} - e^{-i pi alpha})
        let mut weight = 1.0;
        for a in &rs.positive_roots {
            let e: i64 = a.dynkin.iter().zip(&theta).map(|(x, t)| x * t).sum();
            weight *= 2.0 - 2.0 * roots_of_unity[e.rem_euclid(m) as usize].re;
        }
        if weight != 0.0 {
            total += eval(f, &theta) * eval(g, &theta).conj() * weight;
        }
        for t in theta.iter_mut() {
            *t += 1;
            if *t < m {
                break;
            }
            *t = 0;
        }
    }
    Ok(total / (npts as f64 * rs.weyl_order() as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::DEFAULT_WEYL_BUDGET;
    use crate::oracles::all_weights;
    use crate::rational::qi;

    #[test]
    fn su2_characters_are_orthonormal() {
        let rs = RootSystem::new("A1".parse().unwrap(), qi(1)).unwrap();
        let ch = |n: i64| ClassFunction::from_weights(&all_weights(&rs, &[n], DEFAULT_WEYL_BUDGET).unwrap());
        let v = torus_quadrature_pairing(&rs, &ch(2), &ch(2), 16).unwrap();
        assert!((v.re - 1.0).abs() < 1e-13);
        let v = torus_quadrature_pairing(&rs, &ch(2), &ch(3), 16).unwrap();
        assert!(v.norm() < 1e-13);
        assert!(matches!(torus_quadrature_pairing(&rs, &ch(2), &ch(3), 5), Err(Error::MeshTooCoarse { .. })));
    }
}
