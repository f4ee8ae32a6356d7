//! Weyl group elements and enumeration.
//!
//! Elements and orbits are enumerated by reverse search over an orbit in Dynkin labels:
//! the parent of a non-dominant point `u` is `s_j u` for the smallest `j` with `u_j < 0`.
//! That gives a spanning tree rooted at the dominant point, walked depth first with no
//! hashing. On the orbit of `rho` the depth of a node is the length of the element.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::RootSystem;
use crate::rational::{inverse, mat_mul, mat_vec, qi, transpose, QMat, Q};

pub const DEFAULT_WEYL_BUDGET: u64 = 10_000_000;

/// An element of W, stored as its integer matrix on Dynkin labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    pub length: u32,
    /// Row-major `rank x rank` matrix acting on Dynkin labels.
    pub matrix: Vec<i64>,
    pub rank: usize,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut matrix = vec![0; rank * rank];
        for i in 0..rank {
            matrix[i * rank + i] = 1;
        }
        WeylElement { length: 0, matrix, rank }
    }

    /// `s_i w`.
    pub fn left_reflect(&self, rs: &RootSystem, i: usize) -> Self {
        let r = self.rank;
        let mut m = self.matrix.clone();
        for j in 0..r {
            let a = rs.cartan[i][j];
            if a != 0 {
                for k in 0..r {
                    m[j * r + k] -= a * self.matrix[i * r + k];
                }
            }
        }
        WeylElement { length: self.length + 1, matrix: m, rank: r }
    }

    pub fn parity(&self) -> i64 {
        if self.length % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn apply_int(&self, v: &[i64]) -> Vec<i64> {
        let r = self.rank;
        (0..r).map(|j| (0..r).map(|k| self.matrix[j * r + k] * v[k]).sum()).collect()
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        let r = self.rank;
        (0..r)
            .map(|j| (0..r).fold(Q::zero(), |s, k| s + qi(self.matrix[j * r + k]) * v[k]))
            .collect()
    }

    pub fn matrix_q(&self) -> QMat {
        let r = self.rank;
        (0..r).map(|j| (0..r).map(|k| qi(self.matrix[j * r + k])).collect()).collect()
    }

    /// `w^{-1}`, via orthogonality for the weight Gram matrix.
    pub fn inverse(&self, rs: &RootSystem) -> Self {
        let g = &rs.weight_gram;
        let ginv = inverse(g).expect("weight Gram is invertible");
        let inv = mat_mul(&mat_mul(&ginv, &transpose(&self.matrix_q())), g);
        let matrix = inv.iter().flatten().map(|x| x.to_integer()).collect();
        WeylElement { length: self.length, matrix, rank: self.rank }
    }

    /// Matrix of the action on points of t in fundamental-coweight coordinates.
    pub fn coweight_matrix(&self, rs: &RootSystem) -> QMat {
        let a: QMat = rs.cartan.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
        let minv = self.inverse(rs).matrix_q();
        mat_mul(&mat_mul(&a, &transpose(&minv)), &rs.cartan_inv)
    }

    pub fn apply_coweight(&self, rs: &RootSystem, mu: &[Q]) -> Vec<Q> {
        mat_vec(&self.coweight_matrix(rs), mu)
    }

    /// Orthogonal matrix on the ambient space (identity on the complement of t).
    pub fn ambient_matrix(&self, rs: &RootSystem) -> QMat {
        let m = rs.ambient_dim();
        let r = rs.rank;
        // Omega: m x r, columns are fundamental weights
        let omega: QMat = (0..m).map(|k| (0..r).map(|i| rs.fundamental_weights[i][k]).collect()).collect();
        let gram = mat_mul(&transpose(&omega), &omega);
        let pinv = mat_mul(&inverse(&gram).expect("weights span t*"), &transpose(&omega));
        let proj = mat_mul(&omega, &pinv);
        let act = mat_mul(&mat_mul(&omega, &self.matrix_q()), &pinv);
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let id = if i == j { Q::one() } else { Q::zero() };
                        act[i][j] + id - proj[i][j]
                    })
                    .collect()
            })
            .collect()
    }
}

fn check_budget(what: &str, needed: u64, budget: u64) -> Result<()> {
    if needed > budget {
        return Err(Error::BudgetExceeded { what: what.to_string(), needed, budget });
    }
    Ok(())
}

/// Walk the reverse-search tree of the orbit of the dominant integral weight `start`.
/// The callback receives each orbit point together with its depth and the index of the
/// simple reflection that produced it from its parent.
fn walk_orbit<F>(rs: &RootSystem, start: &[i64], mut visit: F)
where
    F: FnMut(&[i64], u32, Option<usize>, usize) -> bool,
{
    // stack frames: (point, depth, next reflection index to try, node id)
    let r = rs.rank;
    let mut stack: Vec<(Vec<i64>, u32, usize, usize)> = vec![(start.to_vec(), 0, 0, 0)];
    let mut next_id = 1usize;
    if !visit(start, 0, None, 0) {
        return;
    }
    while let Some(top) = stack.last_mut() {
        let i = top.2;
        if i >= r {
            stack.pop();
            continue;
        }
        top.2 += 1;
        let v = &top.0;
        if v[i] <= 0 {
            continue;
        }
        let vi = v[i];
        let u: Vec<i64> = (0..r).map(|j| v[j] - vi * rs.cartan[i][j]).collect();
        let first_neg = u.iter().position(|&x| x < 0);
        if first_neg != Some(i) {
            continue;
        }
        let depth = top.1 + 1;
        let parent = top.3;
        let id = next_id;
        next_id += 1;
        if !visit(&u, depth, Some(i), parent) {
            return;
        }
        stack.push((u, depth, 0, id));
    }
}

/// Calls `f` on every element of W (identity first, depth-first order).
pub fn for_each_weyl_element<F>(rs: &RootSystem, budget: u64, mut f: F) -> Result<()>
where
    F: FnMut(&WeylElement),
{
    check_budget("Weyl group", rs.weyl_order(), budget)?;
    let rho: Vec<i64> = vec![1; rs.rank];
    // element matrices along the current root-to-node path, indexed by depth
    let mut path: Vec<WeylElement> = vec![WeylElement::identity(rs.rank)];
    walk_orbit(rs, &rho, |_, depth, refl, _| {
        let d = depth as usize;
        if let Some(i) = refl {
            path.truncate(d);
            let w = path[d - 1].left_reflect(rs, i);
            path.push(w);
        }
        f(&path[d]);
        true
    });
    Ok(())
}

pub fn weyl_elements(rs: &RootSystem, budget: u64) -> Result<Vec<WeylElement>> {
    let mut out = Vec::with_capacity(rs.weyl_order().min(budget) as usize);
    for_each_weyl_element(rs, budget, |w| out.push(w.clone()))?;
    Ok(out)
}

/// Calls `f(point, depth)` on every point of the W-orbit of a dominant integral weight.
/// For a regular weight the depth is the length of the unique element reaching the point.
pub fn for_each_orbit_point<F>(rs: &RootSystem, dominant: &[i64], budget: u64, mut f: F) -> Result<()>
where
    F: FnMut(&[i64], u32),
{
    if dominant.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(format!("{dominant:?}")));
    }
    check_budget("Weyl orbit", rs.weyl_order(), budget)?;
    walk_orbit(rs, dominant, |p, d, _, _| {
        f(p, d);
        true
    });
    Ok(())
}

pub fn orbit(rs: &RootSystem, dominant: &[i64], budget: u64) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for_each_orbit_point(rs, dominant, budget, |p, _| out.push(p.to_vec()))?;
    Ok(out)
}

/// Minimal representatives of the left cosets `w W_K` for the reflection subgroup
/// generated by the positive roots `k_roots`: the elements with `w(R_K+) > 0`.
/// Sorted by length, then by matrix entries.
pub fn coset_representatives(rs: &RootSystem, k_roots: &[usize], budget: u64) -> Result<Vec<WeylElement>> {
    rs.validate_subsystem(k_roots)?;
    let dyn_k: Vec<&Vec<i64>> = k_roots.iter().map(|&i| &rs.positive_roots[i].dynkin).collect();
    let mut reps = Vec::new();
    for_each_weyl_element(rs, budget, |w| {
        if dyn_k.iter().all(|a| rs.is_positive_dynkin(&w.apply_int(a))) {
            reps.push(w.clone());
        }
    })?;
    reps.sort();
    Ok(reps)
}

/// Moves a weight into the dominant chamber by simple reflections.
pub fn dominant_conjugate(rs: &RootSystem, v: &[i64]) -> Vec<i64> {
    let mut u = v.to_vec();
    while let Some(i) = u.iter().position(|&x| x < 0) {
        let ui = u[i];
        for j in 0..rs.rank {
            u[j] -= ui * rs.cartan[i][j];
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{det, qi};
    use std::collections::BTreeSet;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap(), qi(1)).unwrap()
    }

    #[test]
    fn enumeration_matches_order() {
        for t in ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4", "F4"] {
            let r = rs(t);
            let els = weyl_elements(&r, DEFAULT_WEYL_BUDGET).unwrap();
            assert_eq!(els.len() as u64, r.weyl_order(), "{t}");
            let distinct: BTreeSet<_> = els.iter().map(|w| w.matrix.clone()).collect();
            assert_eq!(distinct.len(), els.len(), "{t}");
            let longest = els.iter().map(|w| w.length).max().unwrap();
            assert_eq!(longest as usize, r.num_positive_roots(), "{t}");
        }
    }

    #[test]
    fn e8_needs_budget_override() {
        let r = rs("E8");
        assert!(matches!(
            for_each_weyl_element(&r, DEFAULT_WEYL_BUDGET, |_| {}),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn lengths_count_inversions() {
        let r = rs("B3");
        for_each_weyl_element(&r, DEFAULT_WEYL_BUDGET, |w| {
            let inv = r
                .positive_roots
                .iter()
                .filter(|a| !r.is_positive_dynkin(&w.apply_int(&a.dynkin)))
                .count();
            assert_eq!(inv as u32, w.length);
        })
        .unwrap();
    }

    #[test]
    fn ambient_matrices_are_orthogonal_with_sign_parity() {
        for t in ["A2", "G2", "B2"] {
            let r = rs(t);
            for w in weyl_elements(&r, DEFAULT_WEYL_BUDGET).unwrap() {
                let m = w.ambient_matrix(&r);
                assert_eq!(mat_mul(&transpose(&m), &m), crate::rational::identity(r.ambient_dim()));
                assert_eq!(det(&m), qi(w.parity()));
            }
        }
    }

    #[test]
    fn inverse_and_coweight_action() {
        let r = rs("G2");
        let mu = vec![Q::new(1, 7), Q::new(2, 9)];
        let lam = vec![qi(3), qi(-2)];
        for w in weyl_elements(&r, DEFAULT_WEYL_BUDGET).unwrap() {
            let wi = w.inverse(&r);
            assert_eq!(w.apply_int(&wi.apply_int(&[5, 7])), vec![5, 7]);
            let wl = w.apply(&lam);
            let wm = w.apply_coweight(&r, &mu);
            assert_eq!(r.pair(&wl, &wm), r.pair(&lam, &mu));
        }
    }

    #[test]
    fn orbit_sizes() {
        let r = rs("A2");
        assert_eq!(orbit(&r, &[1, 0], DEFAULT_WEYL_BUDGET).unwrap().len(), 3);
        assert_eq!(orbit(&r, &[1, 1], DEFAULT_WEYL_BUDGET).unwrap().len(), 6);
        assert_eq!(orbit(&r, &[0, 0], DEFAULT_WEYL_BUDGET).unwrap().len(), 1);
        let g = rs("G2");
        assert_eq!(orbit(&g, &[0, 1], DEFAULT_WEYL_BUDGET).unwrap().len(), 6);
    }

    #[test]
    fn coset_reps_cover_each_coset_once() {
        let r = rs("A2");
        let top = r.highest_root;
        let reps = coset_representatives(&r, &[top], DEFAULT_WEYL_BUDGET).unwrap();
        assert_eq!(reps.len(), 3);
        let g = rs("G2");
        let long: Vec<usize> = (0..6).filter(|&i| g.positive_roots[i].half_norm == qi(1)).collect();
        let reps = coset_representatives(&g, &long, DEFAULT_WEYL_BUDGET).unwrap();
        assert_eq!(reps.len(), 2);
        // orbit images of a generic weight under reps hit distinct W_K-orbits
        let all = coset_representatives(&g, &[], DEFAULT_WEYL_BUDGET).unwrap();
        assert_eq!(all.len(), 12);
        assert_eq!(all[0], WeylElement::identity(2));
    }

    #[test]
    fn dominant_conjugate_lands_in_chamber() {
        let r = rs("B3");
        for p in orbit(&r, &[2, 0, 1], DEFAULT_WEYL_BUDGET).unwrap() {
            assert_eq!(dominant_conjugate(&r, &p), vec![2, 0, 1]);
        }
    }
}
