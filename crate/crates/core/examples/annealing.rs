//! Simulated annealing over CNOT layers in front of the circuit.
//!
//! ```text
//! cargo run --release --example annealing -- 200
//! ```

use zxroute::harness::random_circuit;
use zxroute::meta::{anneal, AnnealConfig};
use zxroute::{synthesize, Method, QubitMapping, Topology};

fn main() -> zxroute::Result<()> {
    let iterations = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let topo = Topology::named("valencia")?;
    let p = random_circuit(topo.n(), 20, 9)?;
    let id = QubitMapping::identity(topo.n());
    for inner in [Method::NaiveRouted, Method::SteinerGraySynth, Method::ParitySynth] {
        let base = synthesize(&p, &topo, inner, &id)?;
        let cfg = AnnealConfig { iterations, seed: 1, ..AnnealConfig::default() };
        let r = anneal(&p, &topo, &cfg, inner, &id)?;
        println!(
            "{:<13} plain {:>4}  annealed {:>4}  ({iterations} iterations, {:?})",
            inner.name(),
            base.cnot_count,
            r.cnot_count,
            r.elapsed
        );
    }
    Ok(())
}
