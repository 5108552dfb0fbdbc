//! How the best forward CNOT count evolves with the Reverse Traversal budget.
//!
//! ```text
//! cargo run --release --example reverse_traversal
//! ```

use zxroute::harness::random_circuit;
use zxroute::meta::reverse_traversal;
use zxroute::{Method, Topology};

fn main() -> zxroute::Result<()> {
    let topo = Topology::named("yorktown")?;
    let p = random_circuit(topo.n(), 40, 3)?;
    for method in [Method::SteinerGraySynth, Method::ParitySynth] {
        print!("{:<4}", method.name());
        for iterations in [1, 2, 5, 10, 100] {
            let r = reverse_traversal(&p, &topo, iterations, method)?;
            print!("  RT{iterations}: {:>4}", r.cnot_count);
        }
        println!();
    }
    let r = reverse_traversal(&p, &topo, 10, Method::ParitySynth)?;
    println!("best placement: in {}  out {}", r.input_mapping, r.output_mapping);
    Ok(())
}
