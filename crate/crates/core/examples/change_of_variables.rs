//! Inverting the gradient of a deformed quadratic form as a series in the deformation
//! parameters, and the Hessian determinant through the root product.
//!
//!     cargo run --example change_of_variables

use std::sync::Arc;

use witten::deformation::{BetaSpec, DeformedP, DetVariant, InvariantPoly};
use witten::engine::generator_table;
use witten::lie::weights::lambda_plus_rho;
use witten::lie::RootSystem;
use witten::poly::{parse_polynomial, PolyContext};
use witten::rational::qi;
use witten::real::creal;
use witten::series::SuperSeries;

fn main() -> witten::Result<()> {
    let rs = Arc::new(RootSystem::new("A2".parse()?, qi(1))?);
    let ctx = PolyContext::of(&rs);
    let p3 = InvariantPoly::full(&rs, parse_polynomial("power_sum(3)", &ctx)?)?;
    let p = DeformedP::new(rs.clone(), vec![("delta1".into(), p3)])?;
    let table = generator_table(&p, &BetaSpec::trivial(), 3)?;

    let lambda = [1, 2];
    let xi = p.solve_xi_weight::<f64>(&table, &lambda_plus_rho(&lambda))?;
    for (k, x) in xi.iter().enumerate() {
        println!("xi_{} = {}", k + 1, show(x));
    }

    let det_half = p.det_half_pp(&xi, DetVariant::Full)?;
    println!("det^(1/2) p''(xi) = {}", show(&det_half));
    println!("at delta1 = 0.01: {:.12}", det_half.evaluate(&[creal(0.01)])?.re);
    Ok(())
}

fn show(s: &SuperSeries<f64>) -> String {
    let terms: Vec<String> = s.to_keyed().iter().map(|(k, c)| format!("{:+.6} {k}", c.re)).collect();
    terms.join(" ")
}
