//! Simple summands of commutative gradings: C(2^q;+) and C(2^q;-) for q = 1..4.

use gradiv::catalog::basic_c;
use gradiv::invariants::ungraded_decomposition_commutative;
use gradiv::Sign;

fn main() -> gradiv::Result<()> {
    for q in 1..=4 {
        for s in [Sign::Plus, Sign::Minus] {
            let (c, r) = ungraded_decomposition_commutative(&basic_c(1 << q, s)?)?;
            println!("C({};{})  {c} x C  +  {r} x R", 1 << q, s.symbol());
        }
    }
    Ok(())
}
