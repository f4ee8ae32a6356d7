//! Riemannian volumes of G, T, G/T and conjugacy classes, and how they scale with the
//! inner product.
//!
//!     cargo run --example volumes

use witten::lie::{AlcovePoint, RootSystem, DEFAULT_WEYL_BUDGET};
use witten::rational::{q, qi};
use witten::rep::{vol_g, vol_g_over_t, vol_t, ConjugacyClass};

fn main() -> witten::Result<()> {
    for (t, c) in [("A1", qi(1)), ("A1", qi(4)), ("A2", qi(1)), ("C2", qi(1)), ("G2", qi(1))] {
        let rs = RootSystem::new(t.parse()?, c)?;
        println!(
            "{t} at scale {c}: vol(G/T) = {:.10}, vol(T) = {:.10}, vol(G) = {:.10}",
            vol_g_over_t::<f64>(&rs),
            vol_t::<f64>(&rs),
            vol_g::<f64>(&rs)
        );
    }

    let rs = RootSystem::new("A1".parse()?, qi(1))?;
    for u in [q(0, 1), q(1, 4), q(1, 2), q(1, 1)] {
        let class = ConjugacyClass::new(&rs, AlcovePoint::new(&rs, vec![u])?, DEFAULT_WEYL_BUDGET)?;
        println!("SU(2) class of exp({u}): dim {}, volume {:.10}", class.dim(&rs), class.volume::<f64>(&rs));
    }
    Ok(())
}
