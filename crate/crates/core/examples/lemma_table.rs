//! Checks every rewrite rule's generator substitution over small exponents.

use gradiv::normalize::verify_lemmas;

fn main() -> gradiv::Result<()> {
    let max_exp = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    for r in verify_lemmas(max_exp)? {
        let status = if r.ok() { "pass" } else { "DISCREPANCY" };
        println!("{:<12} {:>5}/{:<5} {status}", r.rule, r.passed, r.instances);
        for f in r.failures.iter().take(4) {
            println!("    fails: {f}");
        }
    }
    Ok(())
}
