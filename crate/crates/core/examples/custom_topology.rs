//! Synthesis on a topology read from edge-list text.
//!
//! ```text
//! cargo run --example custom_topology
//! ```

use zxroute::harness::random_circuit;
use zxroute::topology::cut_vertices;
use zxroute::{synthesize, Method, QubitMapping, Topology};

const STAR_OF_LINES: &str = "\
# a hub with three arms of length two
nodes 7
0 1
1 2
0 3
3 4
0 5
5 6
";

fn main() -> zxroute::Result<()> {
    let topo = Topology::from_edge_text(STAR_OF_LINES)?.with_name("star");
    println!("{} nodes, diameter {}", topo.n(), topo.diameter());
    let all = topo.all_nodes();
    println!("cut vertices: {:?}", cut_vertices(&topo, &all)?);
    let shortcut = topo.path(2, 6);
    println!("path 2 -> 6: {shortcut:?}");

    let p = random_circuit(topo.n(), 25, 8)?;
    let id = QubitMapping::identity(topo.n());
    for method in [Method::NaiveRouted, Method::SteinerGraySynth, Method::ParitySynth] {
        let r = synthesize(&p, &topo, method, &id)?;
        println!("{:<13} {:>4} CNOTs", method.name(), r.cnot_count);
    }
    Ok(())
}
