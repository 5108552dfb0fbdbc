//! A small benchmark table: mean CNOT counts per device, gadget count and
//! pipeline, with the raw rows written as CSV.
//!
//! ```text
//! cargo run --release --example benchmark > rows.csv
//! ```

use zxroute::harness::{run_benchmark, summarize, write_csv, BenchConfig};

fn main() -> zxroute::Result<()> {
    let cfg = BenchConfig {
        devices: vec!["valencia".into(), "yorktown".into()],
        gadget_counts: vec![1, 10, 50],
        circuits: 10,
        pipelines: ["SG", "Par", "SG+RT", "SG+RT->An"]
            .iter()
            .map(|s| s.parse())
            .collect::<zxroute::Result<_>>()?,
        seed: 2024,
        jobs: 0,
    };
    let rows = run_benchmark(&cfg)?;
    for cell in summarize(&rows) {
        eprintln!(
            "{:<9} m={:<3} {:<10} {:>8.1}",
            cell.device, cell.ngadgets, cell.method, cell.mean_cnots
        );
    }
    write_csv(&rows, std::io::stdout().lock(), true)
}
