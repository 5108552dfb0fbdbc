use std::hash::Hasher;
use std::io::Write;
use std::time::Duration;

use fnv::FnvHasher;
use rayon::prelude::*;

use super::generate::random_circuit;
use crate::error::{Error, Result};
use crate::meta::{run_pipeline, PipelineKind, PipelineSpec};
use crate::synthesis::Method;
use crate::topology::Topology;
use crate::verify::{equivalent, unitary_of_gates, unitary_of_polynomial, DEFAULT_TOLERANCE};

pub const CSV_HEADER: [&str; 7] =
    ["device", "ngadgets", "circuit_id", "method", "cnots", "seconds", "seed"];

/// Largest register count checked against the dense oracle during a run.
pub const ORACLE_QUBITS: usize = 5;

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub devices: Vec<String>,
    pub gadget_counts: Vec<usize>,
    pub circuits: usize,
    pub pipelines: Vec<PipelineSpec>,
    pub seed: u64,
    /// Worker threads; `0` lets the thread pool decide.
    pub jobs: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            devices: vec!["valencia".into(), "melbourne".into()],
            gadget_counts: vec![1, 10, 100],
            circuits: 20,
            pipelines: PipelineSpec::roster(),
            seed: 0,
            jobs: 0,
        }
    }
}

/// One (circuit, pipeline) measurement. `seed` regenerates the circuit.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub device: String,
    pub ngadgets: usize,
    pub circuit_id: usize,
    pub method: String,
    pub cnots: usize,
    pub seconds: f64,
    pub seed: u64,
}

fn fnv_seed(parts: &[&[u8]]) -> u64 {
    let mut h = FnvHasher::default();
    for part in parts {
        h.write(part);
        h.write_u8(0xff);
    }
    h.finish()
}

/// Seed of the circuit in a cell; independent of the pipeline.
pub fn circuit_seed(seed: u64, device: &str, m: usize, circuit_id: usize) -> u64 {
    fnv_seed(&[
        &seed.to_le_bytes(),
        device.as_bytes(),
        &(m as u64).to_le_bytes(),
        &(circuit_id as u64).to_le_bytes(),
    ])
}

/// Seed handed to a pipeline run on a circuit.
pub fn pipeline_seed(circuit_seed: u64, pipeline: &str) -> u64 {
    fnv_seed(&[&circuit_seed.to_le_bytes(), pipeline.as_bytes()])
}

/// Runs every (device, m, circuit, pipeline) job and checks each result.
///
/// Rows come out in that nesting order regardless of `jobs`. A result that
/// leaves the device edges, or that the dense oracle rejects on devices of
/// at most [`ORACLE_QUBITS`] registers, aborts the run.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let topos = cfg
        .devices
        .iter()
        .map(|d| Topology::named(d))
        .collect::<Result<Vec<_>>>()?;
    let mut jobs = Vec::new();
    for (d, name) in cfg.devices.iter().enumerate() {
        for &m in &cfg.gadget_counts {
            for c in 0..cfg.circuits {
                for spec in &cfg.pipelines {
                    jobs.push((d, name.as_str(), m, c, spec));
                }
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    pool.install(|| {
        jobs.par_iter()
            .map(|&(d, device, m, c, spec)| run_job(&topos[d], device, m, c, spec, cfg.seed))
            .collect()
    })
}

fn run_job(
    topo: &Topology,
    device: &str,
    m: usize,
    circuit_id: usize,
    spec: &PipelineSpec,
    seed: u64,
) -> Result<BenchRow> {
    let cseed = circuit_seed(seed, device, m, circuit_id);
    let name = spec.name();
    let p = random_circuit(topo.n(), m, cseed)?;
    let r = run_pipeline(&p, topo, spec, pipeline_seed(cseed, &name))?;
    let fail = |what: &str| {
        Error::Verification(format!(
            "{what}: seed {seed}, device {device}, m {m}, circuit {circuit_id}, pipeline {name}"
        ))
    };
    if spec.kind != PipelineKind::Plain(Method::Naive) && !r.is_compliant(topo) {
        return Err(fail("CNOT off the device edges"));
    }
    if topo.n() <= ORACLE_QUBITS {
        let ok = equivalent(
            &unitary_of_polynomial(&p)?,
            &unitary_of_gates(&r.gates, topo.n())?,
            &r.input_mapping,
            &r.output_mapping,
            DEFAULT_TOLERANCE,
        )?;
        if !ok {
            return Err(fail("output not equivalent to input"));
        }
    }
    Ok(BenchRow {
        device: device.to_string(),
        ngadgets: m,
        circuit_id,
        method: name,
        cnots: r.cnot_count,
        seconds: r.elapsed.as_secs_f64(),
        seed: cseed,
    })
}

/// Writes rows under [`CSV_HEADER`]. With `timing` off every `seconds`
/// field is `0`, which makes the file a pure function of the configuration.
pub fn write_csv<W: Write>(rows: &[BenchRow], out: W, timing: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(e.into());
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        let seconds = if timing { format!("{:.6}", r.seconds) } else { "0".to_string() };
        w.write_record([
            r.device.clone(),
            r.ngadgets.to_string(),
            r.circuit_id.to_string(),
            r.method.clone(),
            r.cnots.to_string(),
            seconds,
            r.seed.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Mean over the circuits of one (device, m, method) cell.
#[derive(Clone, Debug, PartialEq)]
pub struct CellSummary {
    pub device: String,
    pub ngadgets: usize,
    pub method: String,
    pub circuits: usize,
    pub mean_cnots: f64,
    pub mean_seconds: f64,
}

/// Groups rows by (device, m, method) in order of first appearance.
pub fn summarize(rows: &[BenchRow]) -> Vec<CellSummary> {
    let mut cells: Vec<(CellSummary, usize, Duration)> = Vec::new();
    for r in rows {
        let pos = cells.iter().position(|(c, _, _)| {
            c.device == r.device && c.ngadgets == r.ngadgets && c.method == r.method
        });
        let i = pos.unwrap_or_else(|| {
            cells.push((
                CellSummary {
                    device: r.device.clone(),
                    ngadgets: r.ngadgets,
                    method: r.method.clone(),
                    circuits: 0,
                    mean_cnots: 0.0,
                    mean_seconds: 0.0,
                },
                0,
                Duration::ZERO,
            ));
            cells.len() - 1
        });
        let (cell, total, time) = &mut cells[i];
        cell.circuits += 1;
        *total += r.cnots;
        *time += Duration::from_secs_f64(r.seconds);
    }
    cells
        .into_iter()
        .map(|(mut c, total, time)| {
            c.mean_cnots = total as f64 / c.circuits as f64;
            c.mean_seconds = time.as_secs_f64() / c.circuits as f64;
            c
        })
        .collect()
}
