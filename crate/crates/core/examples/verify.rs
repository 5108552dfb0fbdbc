//! Dense equivalence checks, including a result with a tampered gate and
//! a result checked against the wrong mapping.
//!
//! ```text
//! cargo run --example verify
//! ```

use zxroute::harness::random_circuit;
use zxroute::verify::{equivalent, unitary_of_gates, unitary_of_polynomial, DEFAULT_TOLERANCE};
use zxroute::{synthesize, Gate, Method, QubitMapping, Topology};

fn main() -> zxroute::Result<()> {
    let topo = Topology::named("ring-5")?;
    let p = random_circuit(5, 12, 4)?;
    let start = QubitMapping::new(vec![4, 2, 0, 1, 3])?;
    let r = synthesize(&p, &topo, Method::SteinerGraySynth, &start)?;
    let reference = unitary_of_polynomial(&p)?;
    let check = |gates: &[Gate], out: &QubitMapping| -> zxroute::Result<bool> {
        equivalent(&reference, &unitary_of_gates(gates, 5)?, &r.input_mapping, out, DEFAULT_TOLERANCE)
    };

    println!("synthesized circuit:  {}", check(&r.gates, &r.output_mapping)?);
    println!("wrong output mapping: {}", check(&r.gates, &QubitMapping::identity(5))?);
    let mut tampered = r.gates.clone();
    if let Some(Gate::Rz { angle, .. } | Gate::Rx { angle, .. }) =
        tampered.iter_mut().find(|g| !g.is_cnot())
    {
        *angle += 1e-3;
    }
    println!("tampered rotation:    {}", check(&tampered, &r.output_mapping)?);
    Ok(())
}
