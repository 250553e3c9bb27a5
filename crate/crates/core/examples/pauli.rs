//! Orbits of alternating bicharacters: nonsingular ones on Z4xZ4 collapse to one class.

use gradiv::equivalence::{conjugation_witness, pauli_equivalent, pauli_label, DEFAULT_ORACLE_BUDGET};
use gradiv::{Bicharacter, FiniteAbelianGroup};

fn main() -> gradiv::Result<()> {
    let g: FiniteAbelianGroup = "Z4xZ4".parse()?;
    let betas: Vec<Bicharacter> = [1u32, 2, 3]
        .iter()
        .map(|&v| Bicharacter::new(vec![4, 4], 4, vec![vec![0, v], vec![4 - v, 0]]))
        .collect::<gradiv::Result<_>>()?;
    for b in &betas {
        println!("beta(x,y) = i^{}  label {}", b.matrix()[0][1], pauli_label(&g, b)?);
    }
    let v = pauli_equivalent(&g, &betas[0], &betas[2], DEFAULT_ORACLE_BUDGET)?;
    println!("i^1 vs i^3: {}", serde_json::to_string(&v).expect("verdict serializes"));
    let w = conjugation_witness(&g, &betas[0])?;
    println!("J -> -J witness found: {}", w.is_some());
    Ok(())
}
