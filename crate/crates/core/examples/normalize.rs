//! Normal form of a product, with the rewrite steps that produced it.

use gradiv::dsl::{format_expr, parse_expr};
use gradiv::normalize::{expand, normalize_traced};

fn main() -> gradiv::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "E(4;-) * D(2,2;-,-) * C(2;-) * R[Z3]".into());
    let factors = parse_expr(&text)?;
    let (cf, trace) = normalize_traced(&factors)?;
    println!("input   {}", format_expr(&factors));
    for step in &trace {
        println!("  {:<12} at {}  -> {}", step.rule.name(), step.position, step.result.join(" * "));
    }
    println!("label   {}", cf.label());
    println!("normal  {}", format_expr(&expand(&cf)));
    Ok(())
}
