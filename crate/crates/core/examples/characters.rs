//! Weyl dimensions and character values on conjugacy classes, with the Freudenthal
//! multiplicities as an independent check.
//!
//!     cargo run --example characters

use witten::lie::{AlcovePoint, RootSystem, DEFAULT_WEYL_BUDGET};
use witten::oracles::freudenthal_character;
use witten::lie::weights::format_weight;
use witten::rational::{q, qi};
use witten::real::C;
use witten::rep::{weyl_dimension, ConjugacyClass};

fn main() -> witten::Result<()> {
    let rs = RootSystem::new("A2".parse()?, qi(1))?;
    for lambda in [vec![1, 0], vec![1, 1], vec![2, 1], vec![3, 3]] {
        println!("dim V{lambda:?} = {}", weyl_dimension(&rs, &lambda)?);
    }

    // a regular point and a point on a wall of the alcove
    for mu in [vec![q(1, 5), q(1, 3)], vec![q(1, 3), q(0, 1)]] {
        let point = AlcovePoint::new(&rs, mu.clone())?;
        let class = ConjugacyClass::new(&rs, point, DEFAULT_WEYL_BUDGET)?;
        println!("mu = {}: stabilizer roots {:?}, class volume {:.6}", format_weight(&mu), class.k_roots, class.volume::<f64>(&rs));
        for lambda in [vec![1, 0], vec![2, 1]] {
            let chi: C<f64> = class.char_value(&rs, &lambda)?;
            let check = freudenthal_character(&rs, &lambda, &mu, DEFAULT_WEYL_BUDGET)?;
            println!("  chi_{lambda:?} = {chi:.12}  (Freudenthal {check:.12})");
        }
    }
    Ok(())
}
