use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use witten::engine::{sum_pairing, Marking, PairingSpec, SumOptions, SummationMode};
use witten::lie::{AlcovePoint, RootSystem};
use witten::oracles::{clausen_sin, zeta_even};
use witten::poly::Polynomial;
use witten::rational::{q, qi};
use witten::real::Dd;
use witten::rep::vol_g;

fn a1() -> Arc<RootSystem> {
    Arc::new(RootSystem::new("A1".parse().unwrap(), qi(1)).unwrap())
}

fn opts() -> SumOptions {
    SumOptions { threads: 2 }
}

#[test]
fn su2_genus_two_and_three() {
    for s in [2usize, 3] {
        let mut spec = PairingSpec::volume(a1(), s);
        spec.summation.radius = 10_000.0 / 2f64.sqrt();
        let r = sum_pairing::<f64>(&spec, &opts()).unwrap();
        let v = vol_g::<f64>(&spec.rs);
        let exact = 2.0 * v.powi(2 * s as i32 - 2) * zeta_even(s - 1);
        let got = r.coefficient("1").unwrap();
        assert!((got.re - exact).abs() <= r.tail_bound + 1e-15);
        assert!(r.tail_bound <= 1e-8);
    }
}

#[test]
fn su2_genus_two_value() {
    let spec = PairingSpec::volume(a1(), 2);
    let r = sum_pairing::<Dd>(&spec, &opts()).unwrap();
    assert!((r.coefficient("1").unwrap().re - 1.0 / 6.0).abs() < 1e-9, "{:?}", r.coefficient("1"));
}

#[test]
fn marked_su2_matches_clausen() {
    for (n, d) in [(1i64, 3i64), (1, 4)] {
        let rs = a1();
        let m = Marking::new(&rs, AlcovePoint::new(&rs, vec![q(n, d)]).unwrap(), Polynomial::constant(2, qi(1)), 1000).unwrap();
        let mut spec = PairingSpec::volume(rs.clone(), 2).with_marking(m);
        spec.summation.radius = 10_000.0 / 2f64.sqrt();
        spec.summation.mode = Some(SummationMode::Truncate);
        let r = sum_pairing::<f64>(&spec, &opts()).unwrap();
        let t = BigRational::new(BigInt::from(n), BigInt::from(2 * d));
        let exact = clausen_sin(&t, 2) / std::f64::consts::PI.powi(3);
        let got = r.coefficient("1").unwrap();
        assert!((got.re - exact).abs() < 1e-8);
        assert!((got.re - exact).abs() <= r.tail_bound);
    }
}

#[test]
fn convergence_factor_mode_reproduces_volumes() {
    for s in [2usize, 3] {
        let mut spec = PairingSpec::volume(a1(), s);
        spec.summation.mode = Some(SummationMode::ConvergenceFactor);
        let r = sum_pairing::<f64>(&spec, &opts()).unwrap();
        let exact = 2.0 * vol_g::<f64>(&spec.rs).powi(2 * s as i32 - 2) * zeta_even(s - 1);
        let err = (r.coefficient("1").unwrap().re - exact).abs();
        assert!(err <= r.tail_bound.max(1e-12) && r.diagnostics.converged, "s={s}: {err} vs {}", r.tail_bound);
        assert_eq!(r.regulator_trace.len(), spec.summation.epsilons.len());
    }
}

#[test]
fn regime_below_three_is_rejected() {
    let spec = PairingSpec::volume(a1(), 1);
    assert!(sum_pairing::<f64>(&spec, &opts()).is_err());
}
