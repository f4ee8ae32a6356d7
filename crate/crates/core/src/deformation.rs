//! The deformed quadratic form `p = B(x,x)/2 + sum_j delta_j p_j`, evaluated at points of
//! t whose coordinates are super-series in the deformation and beta generators.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::RootSystem;
use crate::poly::{check_invariant, projection_to_t, Polynomial};
use crate::rational::{inverse, mat_mul, transpose, QMat, Q};
use crate::real::{two_pi_i_pow, Real};
use crate::series::{GeneratorTable, SeriesMatrix, SuperSeries};

/// Ambient coordinates of a point of t, as series.
pub type SeriesPoint<T> = Vec<SuperSeries<T>>;

/// A polynomial on t invariant under W, or under the reflection subgroup W_K of a
/// root subsystem.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantPoly {
    pub poly: Polynomial,
    /// Positive roots whose reflections were checked; all of R+ for full invariance.
    pub k_roots: Vec<usize>,
}

impl InvariantPoly {
    pub fn full(rs: &RootSystem, poly: Polynomial) -> Result<Self> {
        check_nvars(rs, &poly)?;
        check_invariant(rs, &poly, &rs.simple_roots)?;
        Ok(InvariantPoly { poly, k_roots: (0..rs.num_positive_roots()).collect() })
    }

    pub fn for_subsystem(rs: &RootSystem, poly: Polynomial, k_roots: &[usize]) -> Result<Self> {
        check_nvars(rs, &poly)?;
        let roots: Vec<Vec<Q>> = k_roots.iter().map(|&i| rs.positive_roots[i].ambient.clone()).collect();
        check_invariant(rs, &poly, &roots)?;
        Ok(InvariantPoly { poly, k_roots: k_roots.to_vec() })
    }

    pub fn one(rs: &RootSystem) -> Self {
        InvariantPoly {
            poly: Polynomial::constant(rs.ambient_dim(), Q::from_integer(1)),
            k_roots: (0..rs.num_positive_roots()).collect(),
        }
    }
}

fn check_nvars(rs: &RootSystem, p: &Polynomial) -> Result<()> {
    if p.nvars != rs.ambient_dim() {
        return Err(Error::Dimension(format!("polynomial in {} variables, group needs {}", p.nvars, rs.ambient_dim())));
    }
    Ok(())
}

/// A named polynomial attached to a generator (`delta_j p_j`, `sigma_i p_i`, ...).
#[derive(Clone, Debug)]
pub struct Weighted {
    pub name: String,
    pub poly: InvariantPoly,
    grad: Vec<Polynomial>,
}

impl Weighted {
    pub fn new(name: &str, poly: InvariantPoly) -> Self {
        let n = poly.poly.nvars;
        let grad = (0..n).map(|k| poly.poly.derivative(k)).collect();
        Weighted { name: name.to_string(), poly, grad }
    }
}

/// One handle's odd data: `P1 = sum_i eps1_i p_i`, `P2 = sum_i eps2_i p_i`.
#[derive(Clone, Debug, Default)]
pub struct Handle {
    pub eps1: Vec<Weighted>,
    pub eps2: Vec<Weighted>,
}

/// Even (`sigma`) and odd (per-handle) parts of the class beta.
#[derive(Clone, Debug, Default)]
pub struct BetaSpec {
    pub sigmas: Vec<Weighted>,
    pub handles: Vec<Handle>,
}

impl BetaSpec {
    pub fn trivial() -> Self {
        BetaSpec::default()
    }

    pub fn with_handles(&self, keep: &[usize]) -> BetaSpec {
        BetaSpec { sigmas: self.sigmas.clone(), handles: keep.iter().map(|&j| self.handles[j].clone()).collect() }
    }

    pub fn without_sigmas(&self) -> BetaSpec {
        BetaSpec { sigmas: vec![], handles: self.handles.clone() }
    }
}

/// `p = B(x,x)/2 + sum_j delta_j p_j` together with the metric data of t.
#[derive(Clone, Debug)]
pub struct DeformedP {
    pub rs: Arc<RootSystem>,
    pub terms: Vec<Weighted>,
    hess: Vec<Vec<Vec<Polynomial>>>,
    /// Ambient coordinates of the simple coroots, `m x r` (columns are basis vectors).
    basis: QMat,
    /// `(E^T E)^{-1}`.
    gram_inv: QMat,
    proj: QMat,
}

impl DeformedP {
    pub fn new(rs: Arc<RootSystem>, terms: Vec<(String, InvariantPoly)>) -> Result<Self> {
        let proj = projection_to_t(&rs);
        for (name, p) in &terms {
            if p.k_roots.len() != rs.num_positive_roots() {
                return Err(Error::NotInvariant(format!("deformation {name} must be W-invariant")));
            }
            let restricted = p.poly.substitute_linear(&proj);
            if !restricted.is_zero() && restricted.min_degree() < 2 {
                return Err(Error::InvalidPolynomial(format!("deformation {name} must have degree >= 2 on t")));
            }
        }
        let m = rs.ambient_dim();
        let basis: QMat = (0..m).map(|k| (0..rs.rank).map(|i| rs.simple_coroots[i][k]).collect()).collect();
        let gram_inv = inverse(&mat_mul(&transpose(&basis), &basis)).expect("coroots are independent");
        let hess = terms
            .iter()
            .map(|(_, p)| (0..m).map(|k| (0..m).map(|l| p.poly.derivative(k).derivative(l)).collect()).collect())
            .collect();
        let terms = terms.into_iter().map(|(n, p)| Weighted::new(&n, p)).collect();
        Ok(DeformedP { rs, terms, hess, basis, gram_inv, proj })
    }

    pub fn quadratic(rs: Arc<RootSystem>) -> Self {
        DeformedP::new(rs, vec![]).expect("no terms to validate")
    }

    fn metric<T: Real>(&self) -> T {
        T::from_ratio(&self.rs.metric)
    }

    fn project<T: Real>(&self, v: &[SuperSeries<T>]) -> SeriesPoint<T> {
        let table = v[0].table();
        self.proj
            .iter()
            .map(|row| {
                let mut acc = SuperSeries::zero(table);
                for (c, x) in row.iter().zip(v) {
                    if !c.is_zero() {
                        acc = &acc + &x.scale_real(T::from_ratio(c));
                    }
                }
                acc
            })
            .collect()
    }

    fn generator<T: Real>(table: &Arc<GeneratorTable>, name: &str) -> Result<SuperSeries<T>> {
        SuperSeries::generator(table, name)
    }

    /// `q'(xi) = sum_j delta_j grad p_j(xi)^sharp`, the deformation part of the gradient.
    fn grad_deformation<T: Real>(&self, xi: &[SuperSeries<T>]) -> Result<SeriesPoint<T>> {
        let table = xi[0].table().clone();
        let m = self.rs.ambient_dim();
        let mut acc: Vec<SuperSeries<T>> = vec![SuperSeries::zero(&table); m];
        let inv_metric = T::one() / self.metric::<T>();
        for t in &self.terms {
            let d = Self::generator::<T>(&table, &t.name)?.scale_real(inv_metric);
            let g: Vec<SuperSeries<T>> = t.grad.iter().map(|p| p.eval_series(xi)).collect();
            let g = self.project(&g);
            for k in 0..m {
                acc[k] = &acc[k] + &(&d * &g[k]);
            }
        }
        Ok(acc)
    }

    /// `p'(xi)`: the gradient identified with a point of t through B.
    pub fn grad<T: Real>(&self, xi: &[SuperSeries<T>]) -> Result<SeriesPoint<T>> {
        let base = self.project(xi);
        let q = self.grad_deformation(xi)?;
        Ok(base.iter().zip(&q).map(|(a, b)| a + b).collect())
    }

    /// Solves `p'(xi) = y` for `xi` by the fixed-point iteration `xi <- y - q'(xi)`; each
    /// step fixes one more degree, so `D` steps are exact at truncation order `D`.
    pub fn solve_xi<T: Real>(&self, table: &Arc<GeneratorTable>, y: &[T]) -> Result<SeriesPoint<T>> {
        let yv: Vec<SuperSeries<T>> = y.iter().map(|&v| SuperSeries::real(table, v)).collect();
        if self.terms.is_empty() {
            return Ok(yv);
        }
        let mut xi = yv.clone();
        for _ in 0..table.truncation {
            let q = self.grad_deformation(&xi)?;
            xi = yv.iter().zip(&q).map(|(a, b)| a - b).collect();
        }
        Ok(xi)
    }

    /// `solve_xi` at `y = (lambda + rho)^sharp` for a weight given by Dynkin labels.
    pub fn solve_xi_weight<T: Real>(&self, table: &Arc<GeneratorTable>, lambda_plus_rho: &[Q]) -> Result<SeriesPoint<T>> {
        let y: Vec<T> = self.rs.weight_sharp(lambda_plus_rho).iter().map(T::from_ratio).collect();
        self.solve_xi(table, &y)
    }

    /// `E^T (Hess p) E` in the simple-coroot basis.
    fn hess_bilinear<T: Real>(&self, xi: &[SuperSeries<T>]) -> Result<Vec<Vec<SuperSeries<T>>>> {
        let table = xi[0].table().clone();
        let r = self.rs.rank;
        let m = self.rs.ambient_dim();
        let metric = self.metric::<T>();
        let e = &self.basis;
        let mut h: Vec<Vec<SuperSeries<T>>> = (0..r)
            .map(|a| {
                (0..r)
                    .map(|b| {
                        let g: Q = (0..m).fold(Q::zero(), |s, k| s + e[k][a] * e[k][b]);
                        SuperSeries::real(&table, metric * T::from_ratio(&g))
                    })
                    .collect()
            })
            .collect();
        for (t, hp) in self.terms.iter().zip(&self.hess) {
            let d = Self::generator::<T>(&table, &t.name)?;
            let vals: Vec<Vec<Option<SuperSeries<T>>>> = hp
                .iter()
                .map(|row| row.iter().map(|p| if p.is_zero() { None } else { Some(p.eval_series(xi)) }).collect())
                .collect();
            for a in 0..r {
                for b in 0..r {
                    let mut s = SuperSeries::zero(&table);
                    for k in 0..m {
                        if e[k][a].is_zero() {
                            continue;
                        }
                        for l in 0..m {
                            if let Some(v) = &vals[k][l] {
                                if !e[l][b].is_zero() {
                                    s = &s + &v.scale_real(T::from_ratio(&(e[k][a] * e[l][b])));
                                }
                            }
                        }
                    }
                    h[a][b] = &h[a][b] + &(&d * &s);
                }
            }
        }
        Ok(h)
    }

    /// Hessian of `p` on t as an operator in the simple-coroot basis; its constant term is
    /// the identity when all deformations vanish.
    pub fn hess<T: Real>(&self, xi: &[SuperSeries<T>]) -> Result<SeriesMatrix<T>> {
        let h = self.hess_bilinear(xi)?;
        let r = self.rs.rank;
        let table = xi[0].table().clone();
        let inv_metric = T::one() / self.metric::<T>();
        let mut out = Vec::with_capacity(r);
        for a in 0..r {
            let mut row = Vec::with_capacity(r);
            for b in 0..r {
                let mut s = SuperSeries::zero(&table);
                for c in 0..r {
                    if !self.gram_inv[a][c].is_zero() {
                        s = &s + &h[c][b].scale_real(T::from_ratio(&self.gram_inv[a][c]) * inv_metric);
                    }
                }
                row.push(s);
            }
            out.push(row);
        }
        SeriesMatrix::new(out)
    }

    fn root_pairing<T: Real>(&self, root: usize, v: &[SuperSeries<T>]) -> SuperSeries<T> {
        let a = &self.rs.positive_roots[root].ambient;
        let mut acc = SuperSeries::zero(v[0].table());
        for (c, x) in a.iter().zip(v) {
            if !c.is_zero() {
                acc = &acc + &x.scale_real(T::from_ratio(c));
            }
        }
        acc
    }

    /// `prod_{alpha in roots} alpha(p'(xi)) / alpha(xi)`.
    pub fn root_ratio<T: Real>(&self, xi: &[SuperSeries<T>], roots: &[usize]) -> Result<SuperSeries<T>> {
        let table = xi[0].table().clone();
        let g = self.grad(xi)?;
        let mut acc = SuperSeries::real(&table, T::one());
        for &i in roots {
            let den = self.root_pairing(i, xi);
            if den.constant_term() == crate::real::czero() {
                return Err(Error::SingularPoint(format!("alpha_{i}(xi) vanishes at constant order")));
            }
            acc = &acc * &self.root_pairing(i, &g).div(&den)?;
        }
        Ok(acc)
    }

    /// `sqrt(det p''|_t)`.
    pub fn sqrt_det_t<T: Real>(&self, xi: &[SuperSeries<T>]) -> Result<SuperSeries<T>> {
        self.hess(xi)?.det()?.sqrt()
    }

    /// `(det p''(xi))^{1/2}` on g (`Full`), on k (`Stabilizer`), or the ratio of the two.
    pub fn det_half_pp<T: Real>(&self, xi: &[SuperSeries<T>], variant: DetVariant<'_>) -> Result<SuperSeries<T>> {
        let all: Vec<usize> = (0..self.rs.num_positive_roots()).collect();
        match variant {
            DetVariant::Full => {
                let r = self.root_ratio(xi, &all)?;
                Ok(&self.sqrt_det_t(xi)? * &r)
            }
            DetVariant::Stabilizer(k) => {
                let r = self.root_ratio(xi, k)?;
                Ok(&self.sqrt_det_t(xi)? * &r)
            }
            DetVariant::Ratio(k) => {
                let rest: Vec<usize> = all.into_iter().filter(|i| !k.contains(i)).collect();
                self.root_ratio(xi, &rest)
            }
        }
    }

    /// Directional derivatives of `sum_i c_i p_i` along the simple coroots, where `c_i` are
    /// the named generators.
    fn weighted_gradient<T: Real>(&self, xi: &[SuperSeries<T>], parts: &[Weighted]) -> Result<Vec<SuperSeries<T>>> {
        let table = xi[0].table().clone();
        let r = self.rs.rank;
        let mut d = vec![SuperSeries::zero(&table); r];
        for w in parts {
            let g = Self::generator::<T>(&table, &w.name)?;
            let grad: Vec<SuperSeries<T>> = w.grad.iter().map(|p| p.eval_series(xi)).collect();
            for a in 0..r {
                let mut s = SuperSeries::zero(&table);
                for (k, gk) in grad.iter().enumerate() {
                    if !self.basis[k][a].is_zero() {
                        s = &s + &gk.scale_real(T::from_ratio(&self.basis[k][a]));
                    }
                }
                d[a] = &d[a] + &(&g * &s);
            }
        }
        Ok(d)
    }

    /// `R~(xi) = sum_i sigma_i p_i(xi) - (1 / 2 pi i) sum_j (p''^{-1} grad P1_j) . grad P2_j`.
    pub fn rtilde<T: Real>(&self, xi: &[SuperSeries<T>], beta: &BetaSpec) -> Result<SuperSeries<T>> {
        let table = xi[0].table().clone();
        let mut acc = SuperSeries::zero(&table);
        for s in &beta.sigmas {
            let g = Self::generator::<T>(&table, &s.name)?;
            acc = &acc + &(&g * &s.poly.poly.eval_series(xi));
        }
        if beta.handles.is_empty() {
            return Ok(acc);
        }
        let r = self.rs.rank;
        let hinv = SeriesMatrix::new(self.hess_bilinear(xi)?)?.inverse()?;
        let factor = -two_pi_i_pow::<T>(-1);
        for h in &beta.handles {
            let d1 = self.weighted_gradient(xi, &h.eps1)?;
            let d2 = self.weighted_gradient(xi, &h.eps2)?;
            let mut s = SuperSeries::zero(&table);
            for a in 0..r {
                for b in 0..r {
                    s = &s + &(&(&d1[a] * hinv.get(a, b)) * &d2[b]);
                }
            }
            acc = &acc + &s.scale(factor);
        }
        Ok(acc)
    }
}

#[derive(Clone, Copy, Debug)]
pub enum DetVariant<'a> {
    Full,
    Stabilizer(&'a [usize]),
    Ratio(&'a [usize]),
}
