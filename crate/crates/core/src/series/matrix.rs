use std::sync::Arc;

use crate::error::{Error, Result};
use crate::real::{cabs, cone, Real};
use crate::series::{GeneratorTable, SuperSeries};

/// Square matrix with even super-series entries.
#[derive(Clone, Debug)]
pub struct SeriesMatrix<T: Real> {
    pub n: usize,
    pub entries: Vec<Vec<SuperSeries<T>>>,
}

impl<T: Real> SeriesMatrix<T> {
    pub fn new(entries: Vec<Vec<SuperSeries<T>>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("series matrix must be square".into()));
        }
        if entries.iter().flatten().any(|e| !e.is_even()) {
            return Err(Error::InvalidSpec("series matrix entries must be even".into()));
        }
        Ok(SeriesMatrix { n, entries })
    }

    pub fn identity(table: &Arc<GeneratorTable>, n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { SuperSeries::constant(table, cone()) } else { SuperSeries::zero(table) })
                    .collect()
            })
            .collect();
        SeriesMatrix { n, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> &SuperSeries<T> {
        &self.entries[i][j]
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.n;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let mut acc = SuperSeries::zero(self.entries[i][j].table());
                for k in 0..n {
                    acc = acc.try_add(&self.entries[i][k].try_mul(&other.entries[k][j])?)?;
                }
                row.push(acc);
            }
            out.push(row);
        }
        Ok(SeriesMatrix { n, entries: out })
    }

    pub fn mul_vec(&self, v: &[SuperSeries<T>]) -> Result<Vec<SuperSeries<T>>> {
        (0..self.n)
            .map(|i| {
                let mut acc = SuperSeries::zero(v[0].table());
                for k in 0..self.n {
                    acc = acc.try_add(&self.entries[i][k].try_mul(&v[k])?)?;
                }
                Ok(acc)
            })
            .collect()
    }

    fn pivot(cols: &[Vec<SuperSeries<T>>], c: usize) -> Result<usize> {
        let (best, mag) = (c..cols.len())
            .map(|r| (r, cabs(cols[r][c].constant_term())))
            .fold((c, T::zero()), |a, b| if b.1 > a.1 { b } else { a });
        if mag == T::zero() {
            return Err(Error::Singular);
        }
        Ok(best)
    }

    /// Determinant by elimination with pivoting on the constant terms.
    pub fn det(&self) -> Result<SuperSeries<T>> {
        let n = self.n;
        let mut m = self.entries.clone();
        let mut d = SuperSeries::constant(m[0][0].table(), cone());
        for c in 0..n {
            let p = Self::pivot(&m, c)?;
            if p != c {
                m.swap(p, c);
                d = -&d;
            }
            d = d.try_mul(&m[c][c])?;
            let inv = m[c][c].inv()?;
            for r in c + 1..n {
                let f = m[r][c].try_mul(&inv)?;
                for k in c..n {
                    let t = f.try_mul(&m[c][k])?;
                    m[r][k] = &m[r][k] - &t;
                }
            }
        }
        Ok(d)
    }

    /// Inverse by Gauss-Jordan elimination; the constant-term matrix must be invertible.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let table = self.entries[0][0].table().clone();
        let mut m = self.entries.clone();
        let mut inv = Self::identity(&table, n).entries;
        for c in 0..n {
            let p = Self::pivot(&m, c)?;
            m.swap(p, c);
            inv.swap(p, c);
            let pinv = m[c][c].inv()?;
            for k in 0..n {
                m[c][k] = m[c][k].try_mul(&pinv)?;
                inv[c][k] = inv[c][k].try_mul(&pinv)?;
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = m[r][c].clone();
                if f.is_empty() {
                    continue;
                }
                for k in 0..n {
                    let a = f.try_mul(&m[c][k])?;
                    m[r][k] = &m[r][k] - &a;
                    let b = f.try_mul(&inv[c][k])?;
                    inv[r][k] = &inv[r][k] - &b;
                }
            }
        }
        Ok(SeriesMatrix { n, entries: inv })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::creal;

    #[test]
    fn inverse_times_matrix_is_identity() {
        let t = GeneratorTable::new(vec!["d".into()], vec!["e1".into(), "e2".into()], 4).unwrap();
        let d = SuperSeries::<f64>::generator(&t, "d").unwrap();
        let ee = &SuperSeries::generator(&t, "e1").unwrap() * &SuperSeries::generator(&t, "e2").unwrap();
        let c = |x: f64| SuperSeries::constant(&t, creal(x));
        let m = SeriesMatrix::new(vec![
            vec![&c(0.0) + &d, &c(2.0) + &ee, c(1.0)],
            vec![c(1.0), &c(3.0) + &d.scale_real(2.0), &d * &d],
            vec![ee.clone(), c(-1.0), &c(1.5) + &ee],
        ])
        .unwrap();
        let id = m.mul(&m.inverse().unwrap()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                let e = id.get(i, j);
                assert!((e.constant_term().re - expect).abs() < 1e-14);
                assert!((e - &SuperSeries::constant(&t, e.constant_term())).max_abs() < 1e-13);
            }
        }
        // det of product = product of dets
        let m2 = m.mul(&m).unwrap();
        let d1 = m.det().unwrap();
        assert!((&m2.det().unwrap() - &(&d1 * &d1)).max_abs() < 1e-12);
    }

    #[test]
    fn singular_constant_part_fails() {
        let t = GeneratorTable::new(vec!["d".into()], vec![], 4).unwrap();
        let d = SuperSeries::<f64>::generator(&t, "d").unwrap();
        let m = SeriesMatrix::new(vec![vec![d.clone(), d.clone()], vec![d.clone(), d]]).unwrap();
        assert!(matches!(m.inverse(), Err(Error::Singular)));
    }
}
