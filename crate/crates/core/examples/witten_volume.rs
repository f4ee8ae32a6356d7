//! Volumes of moduli spaces of flat connections on closed surfaces, compared with the
//! zeta-value closed form for SU(2).
//!
//!     cargo run --release --example witten_volume

use std::sync::Arc;

use witten::engine::{sum_pairing, PairingSpec, SumOptions, SummationMode};
use witten::lie::RootSystem;
use witten::oracles::zeta_even;
use witten::rational::qi;
use witten::rep::vol_g;

fn main() -> witten::Result<()> {
    let su2 = Arc::new(RootSystem::new("A1".parse()?, qi(1))?);
    for genus in 2..=4 {
        let spec = PairingSpec::volume(su2.clone(), genus);
        let r = sum_pairing::<f64>(&spec, &SumOptions::default())?;
        let exact = 2.0 * vol_g::<f64>(&su2).powi(2 * genus as i32 - 2) * zeta_even(genus - 1);
        println!(
            "SU(2) genus {genus}: {:.15e} (closed form {exact:.15e}, tail bound {:.1e})",
            r.coefficient("1").unwrap().re,
            r.tail_bound
        );
    }

    for t in ["A2", "B2", "G2"] {
        let mut spec = PairingSpec::volume(Arc::new(RootSystem::new(t.parse()?, qi(1))?), 2);
        spec.summation.mode = Some(SummationMode::Truncate);
        spec.summation.radius = 60.0;
        let r = sum_pairing::<f64>(&spec, &SumOptions::default())?;
        println!(
            "{t} genus 2: {:.12e} from {} weights, tail bound {:.1e}",
            r.coefficient("1").unwrap().re,
            r.terms_summed,
            r.tail_bound
        );
    }
    Ok(())
}
