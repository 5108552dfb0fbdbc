//! Writing a synthesized circuit as OpenQASM 2.0 and reading it back.
//!
//! ```text
//! cargo run --example qasm_export
//! ```

use zxroute::harness::random_circuit;
use zxroute::qasm::{export_result, import_qasm};
use zxroute::{run_pipeline, PipelineSpec, Topology};

fn main() -> zxroute::Result<()> {
    let topo = Topology::named("yorktown")?;
    let p = random_circuit(5, 4, 21)?;
    let spec: PipelineSpec = "Par+RT->An".parse()?;
    let r = run_pipeline(&p, &topo, &spec, 21)?;
    let text = export_result(&r);
    print!("{text}");
    let back = import_qasm(&text)?;
    println!("// round trip exact: {}", back.gates == r.gates);
    println!("// mappings kept: {}", back.output_mapping.as_ref() == Some(&r.output_mapping));
    Ok(())
}
