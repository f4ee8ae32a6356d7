//! A pairing with a marked point, a deformed quadratic form and odd handle data, summed
//! with the convergence factor. The same problem is in `examples/data/su3_deformed.json`
//! for the command line.
//!
//!     cargo run --release --example marked_pairing

use std::sync::Arc;

use witten::deformation::{BetaSpec, DeformedP, Handle, InvariantPoly, Weighted};
use witten::engine::{sum_pairing, Marking, PairingSpec, SumOptions, SummationSpec};
use witten::lie::{AlcovePoint, RootSystem, DEFAULT_WEYL_BUDGET};
use witten::poly::{parse_polynomial, PolyContext, Polynomial};
use witten::rational::{q, qi};

fn main() -> witten::Result<()> {
    let rs = Arc::new(RootSystem::new("A1".parse()?, qi(1))?);
    let ctx = PolyContext::of(&rs);
    let inv = |s: &str| -> witten::Result<InvariantPoly> { InvariantPoly::full(&rs, parse_polynomial(s, &ctx)?) };

    let p = DeformedP::new(rs.clone(), vec![("delta1".into(), inv("casimir^2")?)])?;
    let beta = BetaSpec {
        sigmas: vec![Weighted::new("sigma1", inv("casimir")?)],
        handles: vec![Handle {
            eps1: vec![Weighted::new("a1", inv("casimir")?)],
            eps2: vec![Weighted::new("b1", inv("casimir")?)],
        }],
    };
    let marking = Marking::new(&rs, AlcovePoint::new(&rs, vec![q(1, 3)])?, Polynomial::constant(2, qi(1)), DEFAULT_WEYL_BUDGET)?;
    // smaller regulators than the default: the sigma^2 and odd coefficients approach
    // their limits slowly
    let summation = SummationSpec { epsilons: (0..8).map(|k| 0.02 / 2f64.powi(k)).collect(), ..SummationSpec::default() };
    let spec = PairingSpec::new(2, vec![marking], p, beta, 2, summation)?;

    let r = sum_pairing::<f64>(&spec, &SumOptions::default())?;
    println!("mode {}, converged {}", r.diagnostics.mode.name(), r.diagnostics.converged);
    for (key, c) in &r.coefficients {
        println!("{key:>16}  {:+.12e} {:+.12e}i", c.re, c.im);
    }
    println!("extrapolation residual {:.1e}", r.tail_bound);
    Ok(())
}
