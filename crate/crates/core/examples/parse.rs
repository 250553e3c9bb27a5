//! Parsing and printing the factor syntax, including error positions.

use gradiv::dsl::{format_expr, parse_expr, parse_expr_with_notices};

fn main() {
    for text in ["D(2,4;-,+) * C(8;-)", "H * D(2,2;+,+) * R[Z3]", "Pauli(Z4xZ4; 0,1; 3,0)", "M4_4", "C(3;-)", "E(6;+)", "C(2;-) *"] {
        match parse_expr_with_notices(text) {
            Ok(p) => {
                let printed = format_expr(&p.factors);
                let round = parse_expr(&printed).map(|f| f == p.factors).unwrap_or(false);
                println!("{text:<28} -> {printed}  (round trip {round})");
                for n in p.notices {
                    println!("{:<28}    note: {}", "", n.0);
                }
            }
            Err(e) => println!("{text:<28} !! {e}"),
        }
    }
}
