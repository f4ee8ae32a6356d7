//! Acceptance run: one pass/fail line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use witten::deformation::{BetaSpec, DeformedP, Handle, InvariantPoly, Weighted};
use witten::engine::{
    fusion_product_check, sum_pairing, Marking, PairingSpec, SumOptions, SummationMode, SummationSpec,
};
use witten::lie::weights::{dominant_weights_in_ball, lambda_plus_rho};
use witten::lie::{AlcovePoint, RootSystem, DEFAULT_WEYL_BUDGET};
use witten::oracles::{
    all_weights, clausen_sin, freudenthal_character, sun_eigenvalue_hessian, torus_quadrature_pairing, zeta_even,
    ClassFunction,
};
use witten::poly::{parse_polynomial, PolyContext, Polynomial};
use witten::rational::{q, qi, Q};
use witten::real::{creal, Dd, Real, C};
use witten::rep::{char_value_regular, vol_g, vol_g_over_t, weyl_dimension, ConjugacyClass};
use witten::series::{GeneratorTable, SuperSeries};
use witten::Result;

type Outcome = Result<(bool, String)>;

fn group(t: &str) -> Arc<RootSystem> {
    Arc::new(RootSystem::new(t.parse().unwrap(), qi(1)).unwrap())
}

fn random_weight(rng: &mut ChaCha8Rng, rank: usize, max: i64) -> Vec<i64> {
    (0..rank).map(|_| rng.gen_range(0..=max)).collect()
}

fn to_f64(x: &Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

fn weyl_dimension_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for t in ["A1", "A2", "B2", "G2"] {
        let rs = group(t);
        for _ in 0..100 {
            let lambda = random_weight(&mut rng, rs.rank, 15);
            let lr = lambda_plus_rho(&lambda);
            let lhs: Q = rs.positive_roots.iter().fold(Q::one(), |s, a| s * a.inner(&lr));
            let lhs = to_f64(&lhs);
            let dim = weyl_dimension(&rs, &lambda)?.to_f64().unwrap();
            let two_pi = 2.0 * std::f64::consts::PI;
            let rhs = two_pi.powi(-(rs.num_positive_roots() as i32)) * dim / vol_g_over_t::<f64>(&rs);
            worst = worst.max((lhs - rhs).abs() / lhs.abs());
        }
    }
    Ok((worst <= 1e-12, format!("max relative error {worst:.2e}, tolerance 1e-12")))
}

fn random_point(rng: &mut ChaCha8Rng, rank: usize) -> Vec<Q> {
    (0..rank)
        .map(|_| {
            if rng.gen_bool(0.2) {
                Q::zero()
            } else {
                let d = rng.gen_range(2..=40);
                q(rng.gen_range(-d..=2 * d), d)
            }
        })
        .collect()
}

fn character_cross_validation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    let mut regular = 0;
    for t in ["A1", "A2", "B2", "G2"] {
        let rs = group(t);
        for _ in 0..100 {
            let lambda = random_weight(&mut rng, rs.rank, 4);
            let mu = random_point(&mut rng, rs.rank);
            let point = AlcovePoint::reduce(&rs, &mu);
            let class = ConjugacyClass::new(&rs, point.clone(), DEFAULT_WEYL_BUDGET)?;
            let lemma: C<f64> = class.char_value(&rs, &lambda)?;
            let freud = freudenthal_character(&rs, &lambda, &mu, DEFAULT_WEYL_BUDGET)?;
            worst = worst.max((lemma - freud).norm());
            if point.is_regular(&rs) {
                let weyl: C<f64> = char_value_regular(&rs, &lambda, &mu, DEFAULT_WEYL_BUDGET)?;
                worst = worst.max((weyl - freud).norm());
                regular += 1;
            }
        }
    }
    Ok((worst <= 1e-10, format!("400 pairs ({regular} regular), max error {worst:.2e}, tolerance 1e-10")))
}

fn orthonormality() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    for t in ["A1", "A2", "G2"] {
        let rs = group(t);
        let ws = dominant_weights_in_ball(&rs, 5.0)?;
        let chars: Vec<ClassFunction> = ws
            .iter()
            .map(|l| Ok(ClassFunction::from_weights(&all_weights(&rs, l, DEFAULT_WEYL_BUDGET)?)))
            .collect::<Result<_>>()?;
        let band = chars.iter().flat_map(|c| c.terms.iter().flat_map(|(w, _)| w.iter().map(|x| x.abs()))).max().unwrap();
        let roots: i64 = (0..rs.rank).map(|i| rs.positive_roots.iter().map(|a| a.dynkin[i].abs()).sum::<i64>()).max().unwrap();
        let mesh = (2 * band + roots + 1) as usize;
        for (i, f) in chars.iter().enumerate() {
            for (j, g) in chars.iter().enumerate() {
                let v = torus_quadrature_pairing(&rs, f, g, mesh)?;
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((v - C::new(target, 0.0)).norm());
                pairs += 1;
            }
        }
    }
    Ok((worst <= 1e-8, format!("{pairs} pairs, max error {worst:.2e}, tolerance 1e-8")))
}

fn deformation(rs: &Arc<RootSystem>, polys: &[Polynomial]) -> Result<(DeformedP, Arc<GeneratorTable>)> {
    let names: Vec<String> = (1..=polys.len()).map(|i| format!("delta{i}")).collect();
    let terms = polys
        .iter()
        .zip(&names)
        .map(|(p, n)| Ok((n.clone(), InvariantPoly::full(rs, p.clone())?)))
        .collect::<Result<Vec<_>>>()?;
    Ok((DeformedP::new(rs.clone(), terms)?, GeneratorTable::new(names, vec![], 4)?))
}

fn hessian_lemma() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in [2usize, 3] {
        let rs = group(&format!("A{}", n - 1));
        let ctx = PolyContext::of(&rs);
        let p3 = ctx.power_sum(3)?;
        let c2 = parse_polynomial("casimir^2", &ctx)?;
        let (p, table) = deformation(&rs, &[p3.clone(), c2.clone()])?;
        let casimir = ctx.casimir();
        for delta in [1e-2, 5e-3] {
            for lambda in [vec![0; n - 1], vec![1; n - 1], (1..n as i64).collect::<Vec<_>>()] {
                let at = vec![creal(delta); 2];
                let xi = p.solve_xi_weight::<f64>(&table, &lambda_plus_rho(&lambda))?;
                let point: Vec<f64> = xi.iter().map(|s| s.evaluate(&at).map(|c| c.re)).collect::<Result<_>>()?;
                let fixed: Vec<SuperSeries<f64>> = point.iter().map(|&x| SuperSeries::real(&table, x)).collect();
                let all: Vec<usize> = (0..rs.num_positive_roots()).collect();
                let product = p.root_ratio(&fixed, &all)?.evaluate(&at)?.re.powi(2);
                let f = |e: &[f64]| casimir.eval_real(e) + delta * (p3.eval_real(e) + c2.eval_real(e));
                let fd = sun_eigenvalue_hessian(f, &point, 1.0, 5e-2)?;
                worst = worst.max((fd.value - product).abs() / product.abs());
            }
        }
    }
    Ok((worst <= 1e-6, format!("su(2), su(3), delta in {{1e-2, 5e-3}}: max relative error {worst:.2e}, tolerance 1e-6")))
}

fn residual<T: Real>(p: &DeformedP, table: &Arc<GeneratorTable>, lambda: &[i64]) -> Result<(f64, f64)> {
    let lr = lambda_plus_rho(lambda);
    let xi = p.solve_xi_weight::<T>(table, &lr)?;
    let g = p.grad(&xi)?;
    let y = p.rs.weight_sharp(&lr);
    let mut res: f64 = 0.0;
    let mut size: f64 = 0.0;
    for ((gk, yk), xk) in g.iter().zip(&y).zip(&xi) {
        res = res.max(gk.max_diff(&SuperSeries::real(table, T::from_ratio(yk))).to_f64());
        size = size.max(xk.max_abs().to_f64());
    }
    Ok((res, size))
}

fn change_of_variables() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut worst_dd, mut worst_rel): (f64, f64) = (0.0, 0.0);
    for _ in 0..50 {
        let t = ["A1", "A2", "A3", "B2", "C3", "G2"][rng.gen_range(0..6)];
        let rs = group(t);
        let ctx = PolyContext::of(&rs);
        let mut pool = vec!["casimir^2", "casimir^3"];
        if t.starts_with('A') && rs.rank >= 2 {
            pool.push("power_sum(3)");
        }
        if t.starts_with('A') {
            pool.push("power_sum(4)");
        }
        let k = rng.gen_range(1..=3);
        let polys: Vec<Polynomial> = (0..k)
            .map(|_| {
                let c = q(rng.gen_range(-6..=6), rng.gen_range(1..=5));
                parse_polynomial(pool[rng.gen_range(0..pool.len())], &ctx).map(|p| p.scale(c))
            })
            .collect::<Result<_>>()?;
        let (p, table) = deformation(&rs, &polys)?;
        let lambda = random_weight(&mut rng, rs.rank, 3);
        let (res_dd, _) = residual::<Dd>(&p, &table, &lambda)?;
        let (res, size) = residual::<f64>(&p, &table, &lambda)?;
        worst_dd = worst_dd.max(res_dd);
        worst_rel = worst_rel.max(res / size.max(1.0));
    }
    Ok((
        worst_dd <= 1e-12 && worst_rel <= 1e-12,
        format!("50 instances, D = 4: double-double max residual {worst_dd:.2e}, double max residual relative to |xi| {worst_rel:.2e}, tolerance 1e-12"),
    ))
}

fn su2_volume_spec(genus: usize) -> PairingSpec {
    let mut spec = PairingSpec::volume(group("A1"), genus);
    // |lambda + rho| = (k + 1)/sqrt 2, so this radius holds 10^4 weights
    spec.summation.radius = 1e4 / 2f64.sqrt() + 1e-9;
    spec.summation.mode = Some(SummationMode::Truncate);
    spec
}

fn witten_volumes() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for s in [2usize, 3] {
        let spec = su2_volume_spec(s);
        let start = Instant::now();
        let r = sum_pairing::<f64>(&spec, &SumOptions::default())?;
        let secs = start.elapsed().as_secs_f64();
        let exact = 2.0 * vol_g::<f64>(&spec.rs).powi(2 * s as i32 - 2) * zeta_even(s - 1);
        let err = (r.coefficient("1").unwrap() - C::new(exact, 0.0)).norm();
        ok &= err <= r.tail_bound && r.tail_bound <= 1e-8 && r.terms_summed <= 10_000 && secs <= 5.0;
        parts.push(format!(
            "s={s}: |value - {exact:.15}| = {err:.1e} <= tail {:.1e}, {} weights, {secs:.2} s",
            r.tail_bound, r.terms_summed
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn marked_su2() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let rs = group("A1");
    for (n, d) in [(1i64, 3i64), (1, 4)] {
        let m = Marking::new(&rs, AlcovePoint::new(&rs, vec![q(n, d)])?, Polynomial::constant(2, qi(1)), DEFAULT_WEYL_BUDGET)?;
        let mut spec = su2_volume_spec(2).with_marking(m);
        spec.summation.mode = Some(SummationMode::Truncate);
        let r = sum_pairing::<f64>(&spec, &SumOptions::default())?;
        // n-th term is sin(n pi u) / (pi^3 n^3)
        let exact = clausen_sin(&BigRational::new(BigInt::from(n), BigInt::from(2 * d)), 2) / std::f64::consts::PI.powi(3);
        let err = (r.coefficient("1").unwrap() - C::new(exact, 0.0)).norm();
        ok &= err <= 1e-8;
        parts.push(format!("u={n}/{d}: error {err:.1e} (tail {:.1e})", r.tail_bound));
    }
    Ok((ok, format!("{}, tolerance 1e-8", parts.join("; "))))
}

/// A spec with random deformation, sigma and odd data; `markings` random markings.
fn random_spec(rng: &mut ChaCha8Rng, t: &str, genus: usize, markings: usize) -> Result<PairingSpec> {
    let rs = group(t);
    let ctx = PolyContext::of(&rs);
    let pool = ["casimir", "casimir^2", "1/2*casimir", "2*casimir^2 - casimir"];
    let pick = |rng: &mut ChaCha8Rng| -> Result<InvariantPoly> {
        InvariantPoly::full(&rs, parse_polynomial(pool[rng.gen_range(0..pool.len())], &ctx)?)
    };
    let terms = if rng.gen_bool(0.6) { vec![("delta1".to_string(), pick(rng)?)] } else { vec![] };
    let p = DeformedP::new(rs.clone(), terms)?;
    let sigmas = if rng.gen_bool(0.5) { vec![Weighted::new("sigma1", pick(rng)?)] } else { vec![] };
    let handles = (0..rng.gen_range(1..=genus))
        .map(|j| {
            Ok(Handle {
                eps1: vec![Weighted::new(&format!("a{j}"), pick(rng)?)],
                eps2: vec![Weighted::new(&format!("b{j}"), pick(rng)?)],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut marks = Vec::new();
    for _ in 0..markings {
        let mu = AlcovePoint::reduce(&rs, &random_point(rng, rs.rank));
        let qpoly = if rng.gen_bool(0.5) {
            Polynomial::constant(rs.ambient_dim(), qi(1))
        } else {
            parse_polynomial("1 + 1/10*casimir", &ctx)?
        };
        marks.push(Marking::new(&rs, mu, qpoly, DEFAULT_WEYL_BUDGET)?);
    }
    let summation = SummationSpec {
        mode: Some(SummationMode::ConvergenceFactor),
        epsilons: vec![0.4, 0.2, 0.1, 0.05],
        ..SummationSpec::default()
    };
    PairingSpec::new(genus, marks, p, BetaSpec { sigmas, handles }, rng.gen_range(2..=3), summation)
}

fn trivial_marking() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    let mut odd = 0;
    for k in 0..10 {
        let t = if k % 2 == 0 { "A1" } else { "A2" };
        let (genus, markings) = (rng.gen_range(2..=3), rng.gen_range(0..=1));
        let spec = random_spec(&mut rng, t, genus, markings)?;
        odd += spec.table.odd.len();
        let a = sum_pairing::<f64>(&spec, &SumOptions::default())?;
        let b = sum_pairing::<f64>(&spec.with_marking(Marking::trivial(&spec.rs)), &SumOptions::default())?;
        worst = worst.max(a.max_diff(&b));
    }
    Ok((worst <= 1e-12, format!("10 specs, {odd} odd generators in total, max change {worst:.2e}, tolerance 1e-12")))
}

fn fusion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for (t, genus, r) in [("A2", 1, 1), ("A1", 1, 1), ("A2", 2, 2)] {
        let mut spec = random_spec(&mut rng, t, genus, r)?;
        // a non-invariant Q for a regular class exercises W_K-invariance with K trivial
        if let Some(m) = spec.markings.first() {
            if m.class.k_roots.is_empty() {
                let ctx = PolyContext::of(&spec.rs);
                let qpoly = parse_polynomial("1 + 1/5*x1 - 1/7*x2^2", &ctx)?;
                spec.markings[0] = Marking::new(&spec.rs, m.class.mu.clone(), qpoly, DEFAULT_WEYL_BUDGET)?;
            }
        }
        let lambdas: Vec<Vec<i64>> = (0..20).map(|_| random_weight(&mut rng, spec.rs.rank, 6)).collect();
        for rep in fusion_product_check::<f64>(&spec, &lambdas)? {
            worst = worst.max(rep.relative());
        }
    }
    Ok((worst <= 1e-12, format!("3 specs x 20 weights, max relative difference {worst:.2e}, tolerance 1e-12")))
}

fn regularization() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let rs1 = group("A1");
    let marked = su2_volume_spec(2).with_marking(Marking::new(
        &rs1,
        AlcovePoint::new(&rs1, vec![q(1, 3)])?,
        Polynomial::constant(2, qi(1)),
        DEFAULT_WEYL_BUDGET,
    )?);
    let mut a2 = PairingSpec::volume(group("A2"), 2);
    a2.summation.radius = 60.0;
    let cases = vec![("SU(2) s=2", su2_volume_spec(2)), ("SU(2) s=3", su2_volume_spec(3)), ("SU(2) s=2 marked", marked), ("SU(3) s=2", a2)];
    for (name, spec) in cases {
        let mut tr = spec.clone();
        tr.summation.mode = Some(SummationMode::Truncate);
        let mut cf = spec.clone();
        cf.summation.mode = Some(SummationMode::ConvergenceFactor);
        let a = sum_pairing::<f64>(&tr, &SumOptions::default())?;
        let b = sum_pairing::<f64>(&cf, &SumOptions::default())?;
        let diff = a.max_diff(&b);
        let bound = 10.0 * a.tail_bound.max(b.tail_bound);
        ok &= diff <= bound;
        parts.push(format!("{name}: {diff:.1e} <= {bound:.1e}"));
    }
    Ok((ok, parts.join("; ")))
}

const DETERMINISM_PROBLEM: &str = r#"{
  "group": {"type": "A", "rank": 2},
  "genus": 2,
  "markings": [{"mu": ["1/5", "2/5"], "Q": "1 + 1/10*casimir"}],
  "deformation": [{"name": "delta1", "poly": "power_sum(3)"}],
  "beta": {
    "sigmas": [{"name": "sigma1", "poly": "casimir"}],
    "handles": [{"eps1": [{"name": "a1", "poly": "casimir"}], "eps2": [{"name": "b1", "poly": "casimir^2"}]}]
  },
  "truncation": 3,
  "summation": {"mode": "convergence_factor", "epsilons": [0.4, 0.2, 0.1, 0.05]}
}"#;

fn determinism() -> Outcome {
    let dir = tempfile::tempdir()?;
    let input = dir.path().join("problem.json");
    std::fs::write(&input, DETERMINISM_PROBLEM)?;
    let mut outputs = Vec::new();
    for threads in ["1", "8"] {
        let out = dir.path().join(format!("result{threads}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_witten"))
            .args(["pairing", "--input"])
            .arg(&input)
            .arg("--out")
            .arg(&out)
            .args(["--threads", threads])
            .output()?;
        if !status.status.success() {
            return Ok((false, format!("exit {:?}: {}", status.status.code(), String::from_utf8_lossy(&status.stderr))));
        }
        outputs.push(std::fs::read(&out)?);
    }
    let same = outputs[0] == outputs[1];
    Ok((same, format!("--threads 1 vs --threads 8: {} bytes, identical = {same}", outputs[0].len())))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("Weyl-dimension identity", weyl_dimension_identity),
        ("character cross-validation", character_cross_validation),
        ("orthonormality by torus quadrature", orthonormality),
        ("Hessian determinant lemma", hessian_lemma),
        ("change-of-variables residual", change_of_variables),
        ("SU(2) Witten volumes", witten_volumes),
        ("marked SU(2) series", marked_su2),
        ("trivial-marking invariance", trivial_marking),
        ("fusion factorization", fusion),
        ("regularization consistency", regularization),
        ("thread-count determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(Ok(r)) => r,
            Ok(Err(e)) => (false, format!("error: {e}")),
            Err(_) => (false, "panicked".to_string()),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({detail}) [{:.2} s]",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            name,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
