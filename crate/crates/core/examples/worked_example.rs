//! A ZZZ gadget followed by an X gadget on two of the qubits, synthesized
//! on a three-qubit line.
//!
//! ```text
//! cargo run --example worked_example
//! ```

use zxroute::qasm::export_result;
use zxroute::verify::{equivalent, unitary_of_gates, unitary_of_polynomial, DEFAULT_TOLERANCE};
use zxroute::{synthesize, Method, MixedPhasePolynomial, QubitMapping, Topology};

fn main() -> zxroute::Result<()> {
    let p: MixedPhasePolynomial = "qubits 3\nZ 111 0.3\nX 011 0.7\n".parse()?;
    let line = Topology::line(3)?;
    let id = QubitMapping::identity(3);
    println!("{p}");

    for method in [Method::Naive, Method::SteinerGraySynth, Method::ParitySynth] {
        let r = synthesize(&p, &line, method, &id)?;
        let ok = equivalent(
            &unitary_of_polynomial(&p)?,
            &unitary_of_gates(&r.gates, 3)?,
            &r.input_mapping,
            &r.output_mapping,
            DEFAULT_TOLERANCE,
        )?;
        println!(
            "{:<6} {} CNOTs, on line edges: {}, equivalent: {ok}",
            method.name(),
            r.cnot_count,
            r.is_compliant(&line)
        );
        if method == Method::ParitySynth {
            print!("{}", export_result(&r));
        }
    }
    Ok(())
}
