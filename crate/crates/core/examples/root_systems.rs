//! Root data and Weyl groups for a few Cartan types.
//!
//!     cargo run --example root_systems

use witten::lie::{weyl_elements, RootSystem, DEFAULT_WEYL_BUDGET};
use witten::rational::qi;

fn main() -> witten::Result<()> {
    for t in ["A2", "B3", "G2", "F4"] {
        let rs = RootSystem::new(t.parse()?, qi(1))?;
        println!(
            "{t}: rank {}, dim {}, {} positive roots, |W| = {}, |Z| = {}",
            rs.rank,
            rs.dim(),
            rs.num_positive_roots(),
            rs.weyl_order(),
            rs.center_order()
        );
        let highest = &rs.positive_roots[rs.highest_root];
        println!("  highest root {:?} (simple coordinates), Cartan matrix {:?}", highest.simple, rs.cartan);
    }

    // enumerate W(G2) and count elements by length
    let rs = RootSystem::new("G2".parse()?, qi(1))?;
    let ws = weyl_elements(&rs, DEFAULT_WEYL_BUDGET)?;
    let mut by_length = vec![0; rs.num_positive_roots() + 1];
    for w in &ws {
        by_length[w.length as usize] += 1;
    }
    println!("W(G2) elements by length: {by_length:?}");
    Ok(())
}
