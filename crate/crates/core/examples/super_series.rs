//! Truncated series in even and odd (anticommuting) generators.
//!
//!     cargo run --example super_series

use witten::series::{GeneratorTable, SuperSeries};

fn main() -> witten::Result<()> {
    let table = GeneratorTable::new(vec!["delta".into()], vec!["e1".into(), "e2".into()], 3)?;
    let d = SuperSeries::<f64>::generator(&table, "delta")?;
    let e1 = SuperSeries::<f64>::generator(&table, "e1")?;
    let e2 = SuperSeries::<f64>::generator(&table, "e2")?;

    println!("e1 e2 = {}", show(&(&e1 * &e2)));
    println!("e2 e1 = {}", show(&(&e2 * &e1)));
    println!("e1 e1 = {}", show(&(&e1 * &e1)));

    // exp(delta + e1 e2) truncated at total degree 3
    let x = &d + &(&e1 * &e2);
    println!("exp(delta + e1 e2) = {}", show(&x.exp()?));

    let one_plus = d.add_constant(1.0.into());
    println!("1 / (1 + delta) = {}", show(&one_plus.inv()?));
    println!("sqrt(1 + delta) = {}", show(&one_plus.sqrt()?));
    Ok(())
}

fn show(s: &SuperSeries<f64>) -> String {
    let terms: Vec<String> = s.to_keyed().iter().map(|(k, c)| format!("{:+.6} {k}", c.re)).collect();
    terms.join(" ")
}
