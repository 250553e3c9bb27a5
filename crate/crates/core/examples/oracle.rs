//! Brute-force weak isomorphism search between two products, with the witness.

use gradiv::catalog::tensor_of;
use gradiv::dsl::parse_expr;
use gradiv::equivalence::{oracle_search, verify_substitution, DEFAULT_ORACLE_BUDGET};

fn main() -> gradiv::Result<()> {
    let pairs = [
        ("H4 * H4", "M2_4 * M2_4"),
        ("H4 * C(2;-)", "M2_4 * C(2;-)"),
        ("H2 * C(2;-)", "M2_2 * C(2;-)"),
        ("H4", "M2_4"),
    ];
    for (a, b) in pairs {
        let (p, q) = (tensor_of(&parse_expr(a)?)?, tensor_of(&parse_expr(b)?)?);
        match oracle_search(&q, &p, DEFAULT_ORACLE_BUDGET)? {
            Some(w) => {
                // The witness expresses the generators of `b` inside `a`.
                let ok = verify_substitution(&p, &q, &w.gen_images);
                println!("{a}  ~  {b}   [{}]  re-verified: {ok}", w.images_text.join(", "));
            }
            None => println!("{a}  !~ {b}"),
        }
    }
    Ok(())
}
