//! All named pipelines on one random circuit.
//!
//! ```text
//! cargo run --release --example pipelines -- singapore 10
//! ```

use zxroute::harness::random_circuit;
use zxroute::{run_pipeline, PipelineSpec, Topology};

fn main() -> zxroute::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let device = args.first().map_or("valencia", String::as_str);
    let m = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(50);
    let topo = Topology::named(device)?;
    let p = random_circuit(topo.n(), m, 11)?;
    let mut specs = PipelineSpec::roster();
    specs.push("Par+RT+An".parse()?);
    for spec in specs {
        let r = run_pipeline(&p, &topo, &spec, 11)?;
        println!(
            "{:<11} {:>3} syntheses  {:>6} CNOTs  {:>10.3?}",
            spec.name(),
            spec.total_iterations(),
            r.cnot_count,
            r.elapsed
        );
    }
    Ok(())
}
