//! Every synthesis method on a random circuit for a bundled device.
//!
//! ```text
//! cargo run --release --example device_synthesis -- melbourne 100 7
//! ```

use zxroute::harness::random_circuit;
use zxroute::{synthesize, Method, QubitMapping, Topology};

fn main() -> zxroute::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let device = args.first().map_or("valencia", String::as_str);
    let m = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(30);
    let seed = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1);

    let topo = Topology::named(device)?;
    let p = random_circuit(topo.n(), m, seed)?;
    println!("{device}: {} qubits, {} edges, {m} gadgets", topo.n(), topo.edges().len());
    let id = QubitMapping::identity(topo.n());
    for method in [Method::Naive, Method::NaiveRouted, Method::SteinerGraySynth, Method::ParitySynth] {
        let r = synthesize(&p, &topo, method, &id)?;
        println!(
            "{:<13} {:>6} CNOTs  compliant {:<5}  output mapping {}  {:?}",
            method.name(),
            r.cnot_count,
            r.is_compliant(&topo),
            r.output_mapping,
            r.elapsed
        );
    }
    Ok(())
}
