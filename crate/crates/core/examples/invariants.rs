//! Invariant profile of a product as JSON.

use gradiv::dsl::parse_expr;
use gradiv::invariants::{clifford_counts, invariant_profile};

fn main() -> gradiv::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "D(4,4;-,+) * D(2,2;+,+)".into());
    let profile = invariant_profile(&parse_expr(&text)?, None)?;
    println!("{}", serde_json::to_string_pretty(&profile).expect("profile serializes"));
    for m in 0..=4 {
        let c = clifford_counts(m, true);
        println!("m={m}  x^2=+1: {:>3}  x^2=-1: {:>3}", c.d_plus, c.d_minus);
    }
    Ok(())
}
