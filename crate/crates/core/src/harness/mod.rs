//! Random workloads and batch benchmarking.

mod bench;
mod generate;

pub use bench::{
    circuit_seed, pipeline_seed, run_benchmark, summarize, write_csv, BenchConfig, BenchRow,
    CellSummary, CSV_HEADER, ORACLE_QUBITS,
};
pub use generate::{min_legs, random_circuit, random_circuit_with, AngleMode};
