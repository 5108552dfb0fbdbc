use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use zxroute::harness::{self, AngleMode, BenchConfig};
use zxroute::qasm::{self, QasmCircuit};
use zxroute::verify::{equivalent, unitary_of_gates, unitary_of_polynomial, DenseUnitary};
use zxroute::{run_pipeline, Error, MixedPhasePolynomial, PipelineSpec, QubitMapping, Result, Topology};

#[derive(Parser)]
#[command(version, about = "Routing-aware synthesis of phase-gadget circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random polynomial.
    Gen {
        #[arg(short = 'n', long)]
        qubits: usize,
        #[arg(short = 'm', long)]
        gadgets: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Uniform angles in [0, 2π) instead of multiples of π/4.
        #[arg(long)]
        continuous: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Synthesize a polynomial for a device and write QASM.
    Synth {
        input: PathBuf,
        /// Device name or edge-list file.
        #[arg(short, long)]
        topology: String,
        /// Pipeline such as `SG`, `Par`, `SG+RT->An`.
        #[arg(long, default_value = "Par")]
        method: String,
        #[arg(long)]
        rt_iters: Option<usize>,
        #[arg(long)]
        anneal_iters: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Benchmark pipelines on random circuits and write CSV.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "valencia,melbourne")]
        devices: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "1,10,100")]
        gadget_counts: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        circuits: usize,
        #[arg(long, value_delimiter = ',')]
        methods: Option<Vec<String>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv_out: Option<PathBuf>,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Record wall-clock seconds; otherwise the column is 0.
        #[arg(long)]
        timing: bool,
    },
    /// Check that two circuits agree up to global phase and mappings.
    Verify {
        reference: PathBuf,
        candidate: PathBuf,
        /// Defaults to the candidate's recorded input mapping.
        #[arg(long)]
        in_map: Option<QubitMapping>,
        /// Defaults to the candidate's recorded output mapping.
        #[arg(long)]
        out_map: Option<QubitMapping>,
        #[arg(long, default_value_t = zxroute::verify::DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Gen { qubits, gadgets, seed, continuous, output } => {
            let angles = if continuous { AngleMode::Continuous } else { AngleMode::Discrete };
            let p = harness::random_circuit_with(qubits, gadgets, seed, angles)?;
            write_out(output.as_deref(), &p.to_string())?;
        }
        Command::Synth { input, topology, method, rt_iters, anneal_iters, seed, output } => {
            let p: MixedPhasePolynomial = fs::read_to_string(&input)?.parse()?;
            let topo = load_topology(&topology)?;
            let mut spec: PipelineSpec = method.parse()?;
            if let Some(k) = rt_iters {
                spec.rt_iterations = k;
            }
            if let Some(k) = anneal_iters {
                spec.anneal_iterations = k;
            }
            let r = run_pipeline(&p, &topo, &spec, seed)?;
            write_out(output.as_deref(), &qasm::export_result(&r))?;
            eprintln!("cnots {}", r.cnot_count);
        }
        Command::Bench { devices, gadget_counts, circuits, methods, seed, csv_out, jobs, timing } => {
            let pipelines = match methods {
                Some(names) => names.iter().map(|s| s.parse()).collect::<Result<_>>()?,
                None => PipelineSpec::roster(),
            };
            let cfg = BenchConfig { devices, gadget_counts, circuits, pipelines, seed, jobs };
            let rows = harness::run_benchmark(&cfg)?;
            match &csv_out {
                Some(path) => harness::write_csv(&rows, fs::File::create(path)?, timing)?,
                None => harness::write_csv(&rows, io::stdout().lock(), timing)?,
            }
            let mut err = io::stderr().lock();
            for c in harness::summarize(&rows) {
                let _ = write!(err, "{:<14} m={:<4} {:<12} mean cnots {:>9.2}", c.device, c.ngadgets, c.method, c.mean_cnots);
                let _ = if timing { writeln!(err, "  mean s {:.4}", c.mean_seconds) } else { writeln!(err) };
            }
        }
        Command::Verify { reference, candidate, in_map, out_map, tolerance } => {
            let (a, n, _) = load_unitary(&reference)?;
            let (b, m, recorded) = load_unitary(&candidate)?;
            if n != m {
                return Err(Error::DimensionMismatch { expected: n, found: m });
            }
            let (rec_in, rec_out) = recorded.unwrap_or((None, None));
            let id = QubitMapping::identity(n);
            let input = in_map.or(rec_in).unwrap_or_else(|| id.clone());
            let output = out_map.or(rec_out).unwrap_or(id);
            if equivalent(&a, &b, &input, &output, tolerance)? {
                println!("PASS");
            } else {
                println!("FAIL");
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load_topology(spec: &str) -> Result<Topology> {
    if Path::new(spec).is_file() {
        Topology::from_edge_file(spec)
    } else {
        Topology::named(spec)
    }
}

type Recorded = Option<(Option<QubitMapping>, Option<QubitMapping>)>;

/// Dense unitary of a polynomial or QASM file, with any recorded mappings.
fn load_unitary(path: &Path) -> Result<(DenseUnitary, usize, Recorded)> {
    let text = fs::read_to_string(path)?;
    if qasm::is_qasm(&text) {
        let QasmCircuit { n, gates, input_mapping, output_mapping } = qasm::import_qasm(&text)?;
        Ok((unitary_of_gates(&gates, n)?, n, Some((input_mapping, output_mapping))))
    } else {
        let p: MixedPhasePolynomial = text.parse()?;
        Ok((unitary_of_polynomial(&p)?, p.n(), None))
    }
}
