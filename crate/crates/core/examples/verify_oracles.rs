//! Runs the built-in oracle suites and prints each measured error against its
//! tolerance. Same as `witten verify`.
//!
//!     cargo run --release --example verify_oracles

use witten::cli::verify;

fn main() -> witten::Result<()> {
    let mut failed = 0;
    for c in verify::run("all", 1)? {
        println!("{:<16} {:<22} {:.2e} <= {:.0e}  {}", c.suite, c.case, c.error, c.tolerance, if c.passed() { "ok" } else { "FAIL" });
        failed += usize::from(!c.passed());
    }
    std::process::exit(i32::from(failed > 0));
}
