use std::collections::{BTreeSet, VecDeque};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lie::cartan::CartanType;
use crate::rational::{det, dot, inverse, qi, transpose, QMat, Q};
use crate::real::Real;

/// A positive root with its coordinates in the three bases the code needs.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    /// Coefficients in the simple roots.
    pub simple: Vec<i64>,
    /// Dynkin labels `<alpha, alpha_j^vee>`.
    pub dynkin: Vec<i64>,
    /// Coefficients of the coroot in the simple coroots, so `<lambda, alpha^vee> = sum d_j lambda_j`.
    pub coroot: Vec<i64>,
    /// Ambient model coordinates.
    pub ambient: Vec<Q>,
    /// `B*(alpha, alpha) / 2` for the scaled inner product.
    pub half_norm: Q,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple.iter().sum()
    }

    /// `<lambda, alpha^vee>` for a weight in Dynkin labels.
    pub fn coroot_pairing(&self, lambda: &[Q]) -> Q {
        self.coroot.iter().zip(lambda).fold(Q::zero(), |s, (d, l)| s + qi(*d) * l)
    }

    /// `B*(alpha, lambda)`.
    pub fn inner(&self, lambda: &[Q]) -> Q {
        self.half_norm * self.coroot_pairing(lambda)
    }

    /// `alpha(mu)` for a point of t in fundamental-coweight coordinates.
    pub fn eval(&self, mu: &[Q]) -> Q {
        self.simple.iter().zip(mu).fold(Q::zero(), |s, (c, a)| s + qi(*c) * a)
    }
}

/// Root datum of a simple compact simply connected group with a scaled invariant inner
/// product. The scale multiplies the inner product on the Lie algebra; at scale 1 long
/// roots have squared length 2.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub scale: Q,
    /// `c * kappa`: the Lie-algebra inner product is `c kappa` times the ambient dot product.
    pub metric: Q,
    pub simple_roots: Vec<Vec<Q>>,
    pub simple_coroots: Vec<Vec<Q>>,
    /// `A[i][j] = <alpha_i, alpha_j^vee>`.
    pub cartan: Vec<Vec<i64>>,
    pub cartan_inv: QMat,
    pub positive_roots: Vec<Root>,
    pub fundamental_weights: Vec<Vec<Q>>,
    pub fundamental_coweights: Vec<Vec<Q>>,
    /// `B*(omega_i, omega_j)`.
    pub weight_gram: QMat,
    /// `B(alpha_i^vee, alpha_j^vee)`.
    pub coroot_gram: QMat,
    pub highest_root: usize,
}

fn scaled(v: &[Q], c: Q) -> Vec<Q> {
    v.iter().map(|x| x * c).collect()
}

impl RootSystem {
    pub fn new(cartan_type: CartanType, scale: Q) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::InvalidSpec(format!("scale must be positive, got {scale}")));
        }
        let rank = cartan_type.rank;
        let simple_roots = cartan_type.simple_roots();
        let simple_coroots: Vec<Vec<Q>> =
            simple_roots.iter().map(|a| scaled(a, qi(2) / dot(a, a))).collect();
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let v = dot(&simple_roots[i], &simple_coroots[j]);
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        let cartan_q: QMat = cartan.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
        let cartan_inv = inverse(&cartan_q).expect("Cartan matrix is invertible");
        let metric = scale * cartan_type.kappa();

        let comb = |coeffs: &[Q], basis: &[Vec<Q>]| -> Vec<Q> {
            let m = basis[0].len();
            (0..m).map(|k| coeffs.iter().zip(basis).fold(Q::zero(), |s, (c, b)| s + c * b[k])).collect()
        };
        let fundamental_weights: Vec<Vec<Q>> = cartan_inv.iter().map(|row| comb(row, &simple_roots)).collect();
        let cartan_t_inv = transpose(&cartan_inv);
        let fundamental_coweights: Vec<Vec<Q>> =
            cartan_t_inv.iter().map(|row| comb(row, &simple_coroots)).collect();
        let weight_gram: QMat = (0..rank)
            .map(|i| (0..rank).map(|j| dot(&fundamental_weights[i], &fundamental_weights[j]) / metric).collect())
            .collect();
        let coroot_gram: QMat = (0..rank)
            .map(|i| (0..rank).map(|j| dot(&simple_coroots[i], &simple_coroots[j]) * metric).collect())
            .collect();

        let simple_norms: Vec<Q> = simple_roots.iter().map(|a| dot(a, a)).collect();
        let positive_roots: Vec<Root> = generate_positive_roots(&cartan)
            .into_iter()
            .map(|c| {
                let cq: Vec<Q> = c.iter().map(|&x| qi(x)).collect();
                let ambient = comb(&cq, &simple_roots);
                let norm = dot(&ambient, &ambient);
                let dynkin = (0..rank).map(|j| (0..rank).map(|i| c[i] * cartan[i][j]).sum()).collect();
                let coroot = (0..rank)
                    .map(|i| {
                        let d = qi(c[i]) * simple_norms[i] / norm;
                        debug_assert!(d.is_integer());
                        d.to_integer()
                    })
                    .collect();
                Root { simple: c, dynkin, coroot, ambient, half_norm: norm / (qi(2) * metric) }
            })
            .collect();
        let highest_root = (0..positive_roots.len()).max_by_key(|&i| positive_roots[i].height()).unwrap();

        Ok(RootSystem {
            cartan_type,
            rank,
            scale,
            metric,
            simple_roots,
            simple_coroots,
            cartan,
            cartan_inv,
            positive_roots,
            fundamental_weights,
            fundamental_coweights,
            weight_gram,
            coroot_gram,
            highest_root,
        })
    }

    /// `build_root_system("G", 2, 1)`.
    pub fn build(family: &str, rank: usize, scale: Q) -> Result<Self> {
        RootSystem::new(CartanType::new(family.parse()?, rank)?, scale)
    }

    pub fn ambient_dim(&self) -> usize {
        self.simple_roots[0].len()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn dim(&self) -> usize {
        self.rank + 2 * self.positive_roots.len()
    }

    pub fn weyl_order(&self) -> u64 {
        self.cartan_type.weyl_order()
    }

    /// `|Z(G)|`, the determinant of the Cartan matrix.
    pub fn center_order(&self) -> u64 {
        let a: QMat = self.cartan.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
        det(&a).to_integer() as u64
    }

    /// Gram matrix of the simple roots for the scaled inner product on t*.
    pub fn root_gram(&self) -> QMat {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| dot(&self.simple_roots[i], &self.simple_roots[j]) / self.metric).collect())
            .collect()
    }

    /// Volume of t / (coroot lattice) for the scaled inner product.
    pub fn lattice_covolume<T: Real>(&self) -> T {
        T::from_ratio(&det(&self.coroot_gram)).sqrt()
    }

    /// `rho` in Dynkin labels.
    pub fn rho(&self) -> Vec<Q> {
        vec![Q::one(); self.rank]
    }

    /// `B*(lambda, mu)` for weights in Dynkin labels.
    pub fn inner(&self, a: &[Q], b: &[Q]) -> Q {
        let mut s = Q::zero();
        for i in 0..self.rank {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                s += a[i] * self.weight_gram[i][j] * b[j];
            }
        }
        s
    }

    pub fn norm2(&self, a: &[Q]) -> Q {
        self.inner(a, a)
    }

    /// Ambient coordinates of a weight given in Dynkin labels.
    pub fn weight_ambient(&self, lambda: &[Q]) -> Vec<Q> {
        let m = self.ambient_dim();
        (0..m)
            .map(|k| lambda.iter().zip(&self.fundamental_weights).fold(Q::zero(), |s, (l, w)| s + l * w[k]))
            .collect()
    }

    /// Ambient coordinates of the point `lambda^sharp` of t dual to a weight under B.
    pub fn weight_sharp(&self, lambda: &[Q]) -> Vec<Q> {
        self.weight_ambient(lambda).into_iter().map(|x| x / self.metric).collect()
    }

    /// Ambient coordinates of a point of t given in fundamental-coweight coordinates.
    pub fn coweight_ambient(&self, mu: &[Q]) -> Vec<Q> {
        let m = self.ambient_dim();
        (0..m)
            .map(|k| mu.iter().zip(&self.fundamental_coweights).fold(Q::zero(), |s, (l, w)| s + l * w[k]))
            .collect()
    }

    /// `lambda(mu)` for a weight in Dynkin labels and a point in coweight coordinates.
    pub fn pair(&self, lambda: &[Q], mu: &[Q]) -> Q {
        let mut s = Q::zero();
        for i in 0..self.rank {
            if lambda[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                s += lambda[i] * self.cartan_inv[i][j] * mu[j];
            }
        }
        s
    }

    /// Positivity of a root given by its Dynkin labels.
    pub fn is_positive_dynkin(&self, labels: &[i64]) -> bool {
        let mut h = Q::zero();
        for (k, &l) in labels.iter().enumerate() {
            if l != 0 {
                h += qi(l) * self.cartan_inv[k].iter().fold(Q::zero(), |s, x| s + x);
            }
        }
        h.is_positive()
    }

    /// Index of the positive root `+-alpha` with the given simple-root coefficients.
    pub fn root_index(&self, simple: &[i64]) -> Option<(usize, bool)> {
        let neg: Vec<i64> = simple.iter().map(|x| -x).collect();
        self.positive_roots.iter().enumerate().find_map(|(i, r)| {
            if r.simple == simple {
                Some((i, true))
            } else if r.simple == neg {
                Some((i, false))
            } else {
                None
            }
        })
    }

    /// `rho_K`, half the sum of a set of positive roots, in Dynkin labels.
    pub fn half_sum(&self, roots: &[usize]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.rank];
        for &i in roots {
            for (x, d) in v.iter_mut().zip(&self.positive_roots[i].dynkin) {
                *x += qi(*d) / qi(2);
            }
        }
        v
    }

    /// Checks that a set of positive roots is the positive system of a closed root
    /// subsystem, i.e. stable under its own reflections up to sign.
    pub fn validate_subsystem(&self, roots: &[usize]) -> Result<()> {
        let set: BTreeSet<usize> = roots.iter().copied().collect();
        if set.len() != roots.len() || roots.iter().any(|&i| i >= self.positive_roots.len()) {
            return Err(Error::InvalidSubsystem("duplicate or out-of-range root index".into()));
        }
        for &a in roots {
            let ra = &self.positive_roots[a];
            for &b in roots {
                let rb = &self.positive_roots[b];
                let k: i64 = ra.coroot.iter().zip(&rb.dynkin).map(|(d, l)| d * l).sum();
                let refl: Vec<i64> = rb.simple.iter().zip(&ra.simple).map(|(x, y)| x - k * y).collect();
                match self.root_index(&refl) {
                    Some((i, _)) if set.contains(&i) => {}
                    _ => {
                        return Err(Error::InvalidSubsystem(format!(
                            "reflection of root {b} in root {a} leaves the set"
                        )))
                    }
                }
            }
        }
        Ok(())
    }
}

/// Positive roots in simple-root coordinates, sorted by height then lexicographically.
fn generate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(b) = queue.pop_front() {
        for j in 0..r {
            let k: i64 = (0..r).map(|i| b[i] * cartan[i][j]).sum();
            if k == 0 {
                continue;
            }
            let mut c = b.clone();
            c[j] -= k;
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|c| c.iter().all(|&x| x >= 0)).collect();
    pos.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then(a.cmp(b)));
    pos
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap(), qi(1)).unwrap()
    }

    #[test]
    fn root_counts_and_dimensions() {
        for (t, npos, dim, center) in [
            ("A1", 1, 3, 2),
            ("A2", 3, 8, 3),
            ("B2", 4, 10, 2),
            ("G2", 6, 14, 1),
            ("C3", 9, 21, 2),
            ("D4", 12, 28, 4),
            ("F4", 24, 52, 1),
            ("E6", 36, 78, 3),
            ("E7", 63, 133, 2),
            ("E8", 120, 248, 1),
        ] {
            let r = rs(t);
            assert_eq!(r.num_positive_roots(), npos, "{t}");
            assert_eq!(r.dim(), dim, "{t}");
            assert_eq!(r.center_order(), center, "{t}");
        }
    }

    #[test]
    fn long_roots_have_length_two() {
        for t in ["A3", "B3", "C3", "D5", "G2", "F4", "E6", "E7", "E8"] {
            let r = rs(t);
            let max = r.positive_roots.iter().map(|a| a.half_norm).max().unwrap();
            assert_eq!(max, qi(1), "{t}");
        }
    }

    #[test]
    fn rho_is_half_sum_of_positive_roots() {
        for t in ["A2", "B3", "G2", "F4", "E7"] {
            let r = rs(t);
            let all: Vec<usize> = (0..r.num_positive_roots()).collect();
            assert_eq!(r.half_sum(&all), r.rho(), "{t}");
        }
    }

    #[test]
    fn weights_and_coroots_are_dual() {
        for t in ["B2", "G2", "C3", "E6"] {
            let r = rs(t);
            for i in 0..r.rank {
                for j in 0..r.rank {
                    let d = if i == j { qi(1) } else { qi(0) };
                    assert_eq!(dot(&r.fundamental_weights[i], &r.simple_coroots[j]), d);
                    assert_eq!(dot(&r.simple_roots[i], &r.fundamental_coweights[j]), d);
                }
            }
        }
    }

    #[test]
    fn covolume_examples() {
        assert!((rs("A1").lattice_covolume::<f64>() - 2f64.sqrt()).abs() < 1e-15);
        assert!((rs("A2").lattice_covolume::<f64>() - 3f64.sqrt()).abs() < 1e-15);
        let a1 = RootSystem::new("A1".parse().unwrap(), qi(4)).unwrap();
        assert!((a1.lattice_covolume::<f64>() - 2.0 * 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn scale_divides_root_gram() {
        let r = RootSystem::new("A1".parse().unwrap(), q(5, 2)).unwrap();
        assert_eq!(r.root_gram()[0][0], q(4, 5));
    }

    #[test]
    fn subsystem_validation() {
        let r = rs("A2");
        let top = r.highest_root;
        assert!(r.validate_subsystem(&[top]).is_ok());
        assert!(r.validate_subsystem(&[0, 1]).is_err());
        assert!(r.validate_subsystem(&[0, 1, 2]).is_ok());
        let g = rs("G2");
        // the long roots of G2 form an A2 subsystem
        let long: Vec<usize> =
            (0..6).filter(|&i| g.positive_roots[i].half_norm == qi(1)).collect();
        assert_eq!(long.len(), 3);
        assert!(g.validate_subsystem(&long).is_ok());
    }
}
