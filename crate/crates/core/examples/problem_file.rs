//! Loads a JSON problem file, evaluates it and writes the JSON result, as
//! `witten pairing --input FILE` does.
//!
//!     cargo run --release --example problem_file -- crates/core/examples/data/su2_marked.json

use witten::cli::output::{pairing_json, pairing_table};
use witten::cli::problem::parse_problem;
use witten::engine::{sum_pairing, SumOptions};

fn main() -> witten::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| format!("{}/examples/data/su2_genus2.json", env!("CARGO_MANIFEST_DIR")));
    let problem = parse_problem(&std::fs::read_to_string(&path)?)?;
    let spec = problem.to_spec(false)?;
    let r = sum_pairing::<f64>(&spec, &SumOptions::default())?;
    print!("{}", pairing_table(&r));
    println!("{}", pairing_json(&r));
    Ok(())
}
