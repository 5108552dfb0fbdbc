//! Moving CNOTs through a polynomial, commuting regions and inversion.
//!
//! ```text
//! cargo run --example push_through
//! ```

use zxroute::verify::{unitary_of_gates, unitary_of_polynomial};
use zxroute::{Gate, MixedPhasePolynomial};

fn main() -> zxroute::Result<()> {
    let mut p: MixedPhasePolynomial =
        "qubits 4\nZ 1100 0.5\nZ 0111 1.25\nX 1010 0.75\nZ 0001 2.0\n".parse()?;
    let original = p.clone();
    let regions: Vec<usize> = p.commuting_regions().iter().map(|r| r.gadgets.len()).collect();
    println!("regions by size: {regions:?}");

    // CNOT(0,1); p' = p, so pushing twice restores p
    p.push_cnot(0, 1)?;
    println!("after pushing CX 0 1:\n{p}");
    let lhs = unitary_of_polynomial(&p)?.mul(&unitary_of_gates(&[Gate::cnot(0, 1)], 4)?)?;
    println!("distance to original: {:.2e}", unitary_of_polynomial(&original)?.phase_distance(&lhs));
    p.push_cnot(0, 1)?;
    println!("pushed twice restores: {}", p == original);

    let inv = original.reverse();
    let product = unitary_of_polynomial(&inv)?.mul(&unitary_of_polynomial(&original)?)?;
    let id = zxroute::verify::DenseUnitary::identity(4)?;
    println!("reverse is the inverse: {:.2e}", id.phase_distance(&product));
    Ok(())
}
