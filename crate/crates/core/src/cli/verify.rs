//! Oracle suites behind `witten verify`.

use std::sync::Arc;

use crate::deformation::{DeformedP, InvariantPoly};
use crate::engine::{sum_pairing, Marking, PairingSpec, SumOptions, SummationMode};
use crate::error::{Error, Result};
use crate::lie::weights::{dominant_weights_in_ball, lambda_plus_rho};
use crate::lie::{AlcovePoint, RootSystem, DEFAULT_WEYL_BUDGET};
use crate::oracles::{
    all_weights, freudenthal_character, sun_eigenvalue_hessian, torus_quadrature_pairing, zeta_even, ClassFunction,
};
use crate::poly::{parse_polynomial, PolyContext};
use crate::rational::{q, qi, Q};
use crate::real::{creal, Dd, Real, C};
use crate::rep::{char_value_regular, vol_g, weyl_dimension_real, ConjugacyClass};
use crate::series::{GeneratorTable, SuperSeries};

pub const SUITES: [&str; 6] = ["orthonormality", "freudenthal", "hessian-lemma", "inversion", "trivial-marking", "zeta-volumes"];

#[derive(Clone, Debug)]
pub struct Check {
    pub suite: &'static str,
    pub case: String,
    pub error: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.error <= self.tolerance
    }
}

fn group(t: &str) -> Result<RootSystem> {
    RootSystem::new(t.parse()?, qi(1))
}

/// Largest deviation of the quadrature Gram matrix of the characters with
/// `|lambda + rho| <= radius` from the identity.
pub fn orthonormality_error(rs: &RootSystem, radius: f64) -> Result<f64> {
    let ws = dominant_weights_in_ball(rs, radius)?;
    let chars: Vec<ClassFunction> =
        ws.iter().map(|l| all_weights(rs, l, DEFAULT_WEYL_BUDGET).map(|w| ClassFunction::from_weights(&w))).collect::<Result<_>>()?;
    let band = chars.iter().flat_map(|c| c.terms.iter().flat_map(|(w, _)| w.iter().map(|x| x.abs()))).max().unwrap_or(0);
    let root_band = (0..rs.rank).map(|i| rs.positive_roots.iter().map(|a| a.dynkin[i].abs()).sum::<i64>()).max().unwrap_or(0);
    let mesh = (2 * band + root_band + 1) as usize;
    let mut err: f64 = 0.0;
    for (i, f) in chars.iter().enumerate() {
        for (j, g) in chars.iter().enumerate().skip(i) {
            let v = torus_quadrature_pairing(rs, f, g, mesh)?;
            let target = if i == j { 1.0 } else { 0.0 };
            err = err.max((v - C::new(target, 0.0)).norm());
        }
    }
    Ok(err)
}

/// Deterministic rational points of t spread over the torus.
pub fn sample_points(rank: usize, count: usize) -> Vec<Vec<Q>> {
    (0..count)
        .map(|k| (0..rank).map(|i| q(((7 * k + 11 * i + 3 * k * i + 1) % 97) as i64, 97)).collect())
        .collect()
}

/// Relative disagreement of the coset-sum character formula, Freudenthal's multiplicities
/// and (at regular points) the Weyl quotient, over `count` pairs `(lambda, mu)`.
pub fn character_error(rs: &RootSystem, count: usize) -> Result<f64> {
    let ws = dominant_weights_in_ball(rs, 5.0)?;
    let mut err: f64 = 0.0;
    for (k, mu) in sample_points(rs.rank, count).into_iter().enumerate() {
        let lambda = &ws[k % ws.len()];
        let point = AlcovePoint::reduce(rs, &mu);
        let class = ConjugacyClass::new(rs, point.clone(), DEFAULT_WEYL_BUDGET)?;
        let lemma: C<f64> = class.char_value(rs, lambda)?;
        let freud = freudenthal_character(rs, lambda, &mu, DEFAULT_WEYL_BUDGET)?;
        let dim: f64 = weyl_dimension_real(rs, lambda)?;
        err = err.max((lemma - freud).norm() / dim);
        if point.is_regular(rs) {
            let reg: C<f64> = char_value_regular(rs, lambda, &mu, DEFAULT_WEYL_BUDGET)?;
            err = err.max((reg - freud).norm() / dim);
        }
    }
    Ok(err)
}

fn deformed(rs: &Arc<RootSystem>, polys: &[&str]) -> Result<(DeformedP, Arc<GeneratorTable>)> {
    let ctx = PolyContext::of(rs);
    let names: Vec<String> = (1..=polys.len()).map(|i| format!("delta{i}")).collect();
    let terms = polys
        .iter()
        .zip(&names)
        .map(|(p, n)| Ok((n.clone(), InvariantPoly::full(rs, parse_polynomial(p, &ctx)?)?)))
        .collect::<Result<Vec<_>>>()?;
    let p = DeformedP::new(rs.clone(), terms)?;
    let table = GeneratorTable::new(names, vec![], crate::series::DEFAULT_TRUNCATION)?;
    Ok((p, table))
}

/// Relative error between the root product `(prod alpha(p'(xi)) / alpha(xi))^2` and the
/// finite-difference determinant of the Hessian of `p` on the off-diagonal part of su(n),
/// with every deformation parameter set to `delta` and `xi` the value of the series
/// `xi(lambda + rho)` there.
pub fn hessian_lemma_error(n: usize, delta: f64, lambda: &[i64]) -> Result<f64> {
    let rs = Arc::new(RootSystem::build("A", n - 1, qi(1))?);
    let (p, table) = deformed(&rs, &["power_sum(3)", "power_sum(4)"])?;
    let xi = p.solve_xi_weight::<f64>(&table, &lambda_plus_rho(lambda))?;
    let at = vec![creal(delta); table.even.len()];
    let xi_num: Vec<f64> = xi.iter().map(|s| s.evaluate(&at).map(|c| c.re)).collect::<Result<_>>()?;
    // p' is affine in the deformation parameters at a fixed point, so the root product
    // at the numeric point is exact at any truncation order >= the number of roots
    let fixed: Vec<SuperSeries<f64>> = xi_num.iter().map(|&x| SuperSeries::real(&table, x)).collect();
    let all: Vec<usize> = (0..rs.num_positive_roots()).collect();
    let lemma = p.root_ratio(&fixed, &all)?.evaluate(&at)?.re.powi(2);
    let ctx = PolyContext::of(&rs);
    let casimir = ctx.casimir();
    let p3 = ctx.power_sum(3)?;
    let p4 = ctx.power_sum(4)?;
    let f = |e: &[f64]| casimir.eval_real(e) + delta * (p3.eval_real(e) + p4.eval_real(e));
    let fd = sun_eigenvalue_hessian(f, &xi_num, 1.0, 5e-2)?;
    Ok((fd.value - lemma).abs() / lemma.abs())
}

/// Largest coefficient of `p'(xi) - (lambda + rho)` for `xi = solve_xi(lambda + rho)`,
/// relative to the largest coefficient of `xi`.
pub fn inversion_residual<T: Real>(rs: &Arc<RootSystem>, polys: &[&str], lambda: &[i64]) -> Result<f64> {
    let (p, table) = deformed(rs, polys)?;
    let lr = lambda_plus_rho(lambda);
    let xi = p.solve_xi_weight::<T>(&table, &lr)?;
    let g = p.grad(&xi)?;
    let y = rs.weight_sharp(&lr);
    let mut res: f64 = 0.0;
    let mut size: f64 = 0.0;
    for ((gk, yk), xk) in g.iter().zip(&y).zip(&xi) {
        let target = SuperSeries::real(&table, T::from_ratio(yk));
        res = res.max(gk.max_diff(&target).to_f64());
        size = size.max(xk.max_abs().to_f64());
    }
    Ok(res / size.max(1.0))
}

/// Invariant polynomials of degree >= 2 used for randomized inversion instances.
pub fn deformation_pool(rs: &RootSystem) -> Vec<&'static str> {
    use crate::lie::Family;
    match rs.cartan_type.family {
        Family::A if rs.rank >= 2 => vec!["power_sum(3)", "casimir^2", "power_sum(4)"],
        Family::A => vec!["casimir^2", "power_sum(4)"],
        _ => vec!["casimir^2", "casimir^3"],
    }
}

/// Largest change of any coefficient when a trivial marking is appended.
pub fn trivial_marking_change(spec: &PairingSpec, threads: usize) -> Result<f64> {
    let mut spec = spec.clone();
    if spec.summation.mode.is_none() {
        spec.summation.mode = Some(spec.mode());
    }
    let marked = spec.with_marking(Marking::trivial(&spec.rs));
    let opts = SumOptions { threads };
    let a = sum_pairing::<f64>(&spec, &opts)?;
    let b = sum_pairing::<f64>(&marked, &opts)?;
    Ok(a.max_diff(&b))
}

/// `|computed - #Z vol_G^{2s-2} zeta(2s-2)|` for SU(2) at scale 1, and the reported bound.
pub fn su2_volume_error(genus: usize, threads: usize) -> Result<(f64, f64)> {
    let rs = Arc::new(group("A1")?);
    let mut spec = PairingSpec::volume(rs.clone(), genus);
    spec.summation.radius = 10_000.0 / 2f64.sqrt();
    spec.summation.mode = Some(SummationMode::Truncate);
    let r = sum_pairing::<f64>(&spec, &SumOptions { threads })?;
    let exact = 2.0 * vol_g::<f64>(&rs).powi(2 * genus as i32 - 2) * zeta_even(genus - 1);
    let got = r.coefficient("1").unwrap_or_default();
    Ok(((got - C::new(exact, 0.0)).norm(), r.tail_bound))
}

fn sample_spec(rs: &Arc<RootSystem>) -> Result<PairingSpec> {
    use crate::deformation::{BetaSpec, Handle, Weighted};
    let ctx = PolyContext::of(rs);
    let inv = |s: &str| -> Result<InvariantPoly> { InvariantPoly::full(rs, parse_polynomial(s, &ctx)?) };
    let p = DeformedP::new(rs.clone(), vec![("delta1".into(), inv("casimir^2")?)])?;
    let beta = BetaSpec {
        sigmas: vec![Weighted::new("sigma1", inv("casimir")?)],
        handles: vec![Handle {
            eps1: vec![Weighted::new("a1", inv("casimir")?)],
            eps2: vec![Weighted::new("b1", inv("casimir^2")?)],
        }],
    };
    let mut spec = PairingSpec::new(2, vec![], p, beta, 3, Default::default())?;
    // the sigma and odd coefficients grow polynomially in lambda
    spec.summation.mode = Some(SummationMode::ConvergenceFactor);
    Ok(spec)
}

pub fn run(suite: &str, threads: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let suites: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    for s in suites {
        match s {
            "orthonormality" => {
                for t in ["A1", "A2", "G2"] {
                    let e = orthonormality_error(&group(t)?, 5.0)?;
                    out.push(Check { suite: "orthonormality", case: t.into(), error: e, tolerance: 1e-8 });
                }
            }
            "freudenthal" => {
                for t in ["A1", "A2", "B2", "G2"] {
                    let e = character_error(&group(t)?, 100)?;
                    out.push(Check { suite: "freudenthal", case: t.into(), error: e, tolerance: 1e-10 });
                }
            }
            "hessian-lemma" => {
                for n in [2usize, 3] {
                    for delta in [1e-2, 5e-3] {
                        let lambda: Vec<i64> = (0..n - 1).map(|i| i as i64 + 1).collect();
                        let e = hessian_lemma_error(n, delta, &lambda)?;
                        out.push(Check { suite: "hessian-lemma", case: format!("su({n}) delta={delta}"), error: e, tolerance: 1e-6 });
                    }
                }
            }
            "inversion" => {
                for t in ["A1", "A2", "B2", "G2", "A3"] {
                    let rs = Arc::new(group(t)?);
                    let pool = deformation_pool(&rs);
                    let mut e: f64 = 0.0;
                    for (k, l) in dominant_weights_in_ball(&rs, 4.0)?.iter().take(10).enumerate() {
                        let polys: Vec<&str> = pool.iter().copied().cycle().skip(k).take(2).collect();
                        e = e.max(inversion_residual::<Dd>(&rs, &polys, l)?);
                    }
                    out.push(Check { suite: "inversion", case: t.into(), error: e, tolerance: 1e-12 });
                }
            }
            "trivial-marking" => {
                for t in ["A1", "A2"] {
                    let e = trivial_marking_change(&sample_spec(&Arc::new(group(t)?))?, threads)?;
                    out.push(Check { suite: "trivial-marking", case: t.into(), error: e, tolerance: 1e-12 });
                }
            }
            "zeta-volumes" => {
                for s in [2usize, 3] {
                    let (e, tail) = su2_volume_error(s, threads)?;
                    out.push(Check { suite: "zeta-volumes", case: format!("SU(2) genus {s}"), error: e, tolerance: tail.min(1e-8) });
                }
            }
            _ => return Err(Error::Input(format!("unknown suite {s:?}; known suites: all, {}", SUITES.join(", ")))),
        }
    }
    Ok(out)
}
