use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct FdEstimate {
    pub value: f64,
    pub error: f64,
}

/// Determinant of the Hessian of `X -> f(eigenvalues of X)` on the off-diagonal part of
/// su(n) at the diagonal point `xi`, by central finite differences with one Richardson step
/// in the step size. The inner product is `scale * tr(XY)` on Hermitian matrices, and the
/// basis of the off-diagonal block is orthonormal for it.
pub fn sun_eigenvalue_hessian<F>(f: F, xi: &[f64], scale: f64, h: f64) -> Result<FdEstimate>
where
    F: Fn(&[f64]) -> f64,
{
    let n = xi.len();
    let norm = 1.0 / (2.0 * scale).sqrt();
    let mut basis: Vec<DMatrix<Complex<f64>>> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut re = DMatrix::zeros(n, n);
            re[(a, b)] = Complex::new(norm, 0.0);
            re[(b, a)] = Complex::new(norm, 0.0);
            basis.push(re);
            let mut im = DMatrix::zeros(n, n);
            im[(a, b)] = Complex::new(0.0, -norm);
            im[(b, a)] = Complex::new(0.0, norm);
            basis.push(im);
        }
    }
    let base = DMatrix::from_fn(n, n, |i, j| if i == j { Complex::new(xi[i], 0.0) } else { Complex::new(0.0, 0.0) });
    let value_at = |coeffs: &[(usize, f64)]| -> f64 {
        let mut x = base.clone();
        for &(k, c) in coeffs {
            x += &basis[k] * Complex::new(c, 0.0);
        }
        let eig = x.symmetric_eigenvalues();
        f(eig.as_slice())
    };
    let dim = basis.len();
    let f0 = value_at(&[]);
    let hessian = |h: f64| -> DMatrix<f64> {
        let mut m = DMatrix::zeros(dim, dim);
        for k in 0..dim {
            m[(k, k)] = (value_at(&[(k, h)]) - 2.0 * f0 + value_at(&[(k, -h)])) / (h * h);
            for l in k + 1..dim {
                let v = (value_at(&[(k, h), (l, h)]) - value_at(&[(k, h), (l, -h)]) - value_at(&[(k, -h), (l, h)])
                    + value_at(&[(k, -h), (l, -h)]))
                    / (4.0 * h * h);
                m[(k, l)] = v;
                m[(l, k)] = v;
            }
        }
        m
    };
    let h1 = hessian(h);
    let h2 = hessian(h / 2.0);
    let h4 = hessian(h / 4.0);
    let r1 = (&h2 * 4.0 - &h1) / 3.0;
    let r2 = (&h4 * 4.0 - &h2) / 3.0;
    let d1 = r1.determinant();
    let d2 = r2.determinant();
    let error = (d1 - d2).abs();
    if !(error <= 1e-3 * d2.abs().max(1e-300)) {
        return Err(Error::Unstable(format!("determinant estimates {d1} and {d2} disagree")));
    }
    Ok(FdEstimate { value: d2, error })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_form_has_unit_determinant() {
        let f = |e: &[f64]| 0.5 * e.iter().map(|x| x * x).sum::<f64>();
        let d = sun_eigenvalue_hessian(f, &[1.0, 0.2, -1.2], 1.0, 1e-3).unwrap();
        assert!((d.value - 1.0).abs() < 1e-7);
        let f2 = |e: &[f64]| 1.5 * e.iter().map(|x| x * x).sum::<f64>();
        let d = sun_eigenvalue_hessian(f2, &[0.7, -0.7], 3.0, 1e-3).unwrap();
        assert!((d.value - 1.0).abs() < 1e-7);
    }
}
