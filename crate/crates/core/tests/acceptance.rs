//! One PASS/FAIL line per acceptance criterion; exits nonzero on failure.
//!
//! The dense simulator and the GF(2) replay below are written against the
//! public data model only and share no code with the library's checkers.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use zxroute::harness::random_circuit;
use zxroute::synthesis::permrowcol;
use zxroute::{
    run_pipeline, Basis, BitVec, Gate, MixedPhasePolynomial, ParityMatrix, PhaseGadget,
    PipelineSpec, SynthResult, Topology,
};

const PIPELINES: [&str; 7] = ["SG", "Par", "An", "SG+RT", "SG+RT->An", "An+SG+RT", "Par+RT->An"];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("connectivity compliance", c1_compliance),
        ("semantic soundness", c2_soundness),
        ("conjugation involution", c3_involution),
        ("PermRowCol realization", c4_permrowcol),
        ("Par beats SG at 100 gadgets", c5_par_vs_sg),
        ("RT and annealing improve SG", c6_rt_and_anneal),
        ("naive ladder arithmetic", c7_naive),
        ("benchmark determinism", c8_determinism),
        ("desk-scale runtime", c9_runtime),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}; {secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({detail}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn spec(name: &str) -> PipelineSpec {
    name.parse().unwrap()
}

fn on_edges(gates: &[Gate], topo: &Topology) -> bool {
    gates.iter().all(|g| match *g {
        Gate::Cnot { control, target } => topo.edges().iter().any(|&(a, b)| {
            (a, b) == (control, target) || (b, a) == (control, target)
        }),
        _ => true,
    })
}

fn mean(xs: &[usize]) -> f64 {
    xs.iter().sum::<usize>() as f64 / xs.len() as f64
}

// ---------------------------------------------------------------- dense oracle

/// Column-major `2^n × 2^n` matrix; basis index `Σ x_q 2^q`.
#[derive(Clone)]
struct Dense {
    n: usize,
    cols: Vec<Vec<Complex64>>,
}

impl Dense {
    fn identity(n: usize) -> Self {
        let d = 1 << n;
        let cols = (0..d)
            .map(|c| (0..d).map(|r| if r == c { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }).collect())
            .collect();
        Dense { n, cols }
    }

    fn each_column(&mut self, f: impl Fn(&mut Vec<Complex64>)) {
        for col in &mut self.cols {
            f(col);
        }
    }

    fn permute_basis(&mut self, map: impl Fn(usize) -> usize) {
        self.each_column(|v| {
            let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
            for (x, &a) in v.iter().enumerate() {
                out[map(x)] += a;
            }
            *v = out;
        });
    }

    fn hadamard(&mut self, q: usize) {
        let s = 1.0 / 2f64.sqrt();
        self.each_column(|v| {
            for x in 0..v.len() {
                if x >> q & 1 == 0 {
                    let (a, b) = (v[x], v[x | 1 << q]);
                    v[x] = (a + b) * s;
                    v[x | 1 << q] = (a - b) * s;
                }
            }
        });
    }

    /// `exp(−iα/2 · Z⊗legs)`.
    fn z_phase(&mut self, legs: usize, alpha: f64) {
        self.each_column(|v| {
            for (x, a) in v.iter_mut().enumerate() {
                let sign = if (x & legs).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
                *a *= Complex64::from_polar(1.0, -alpha / 2.0 * sign);
            }
        });
    }

    fn rotation(&mut self, basis: Basis, legs: usize, alpha: f64) {
        let qubits: Vec<usize> = (0..self.n).filter(|q| legs >> q & 1 == 1).collect();
        if basis == Basis::X {
            qubits.iter().for_each(|&q| self.hadamard(q));
        }
        self.z_phase(legs, alpha);
        if basis == Basis::X {
            qubits.iter().for_each(|&q| self.hadamard(q));
        }
    }

    fn gate(&mut self, g: &Gate) {
        match *g {
            Gate::Cnot { control, target } => {
                self.permute_basis(|x| if x >> control & 1 == 1 { x ^ 1 << target } else { x })
            }
            Gate::Rz { qubit, angle } => self.rotation(Basis::Z, 1 << qubit, angle),
            Gate::Rx { qubit, angle } => self.rotation(Basis::X, 1 << qubit, angle),
        }
    }

    /// `|x⟩ ↦ |y⟩` with `y[π(q)] = x[q]`.
    fn relabel(&mut self, perm: &[usize]) {
        self.permute_basis(|x| (0..perm.len()).filter(|&q| x >> q & 1 == 1).map(|q| 1 << perm[q]).sum());
    }

    /// Frobenius distance after the best global phase.
    fn phase_distance(&self, other: &Dense) -> f64 {
        let mut inner = Complex64::new(0.0, 0.0);
        for (a, b) in self.cols.iter().zip(&other.cols) {
            for (x, y) in a.iter().zip(b) {
                inner += x.conj() * y;
            }
        }
        let phase = if inner.norm() > 0.0 { inner / inner.norm() } else { Complex64::new(1.0, 0.0) };
        let mut sq = 0.0;
        for (a, b) in self.cols.iter().zip(&other.cols) {
            for (x, y) in a.iter().zip(b) {
                sq += (x * phase - y).norm_sqr();
            }
        }
        sq.sqrt()
    }
}

fn mask(v: &BitVec, n: usize) -> usize {
    (0..n).filter(|&q| v.get(q)).map(|q| 1 << q).sum()
}

/// Gadgets in order, then `|x⟩ ↦ |Tx⟩`.
fn dense_polynomial(p: &MixedPhasePolynomial) -> Dense {
    let n = p.n();
    let mut u = Dense::identity(n);
    for g in p.gadgets() {
        u.rotation(g.basis(), mask(g.legs(), n), g.angle());
    }
    let rows: Vec<usize> = (0..n).map(|i| mask(p.tail().row(i), n)).collect();
    u.permute_basis(|x| (0..n).filter(|&i| (rows[i] & x).count_ones() % 2 == 1).map(|i| 1 << i).sum());
    u
}

/// Distance between `C · P_in` and `P_out · U` up to phase.
fn mapped_distance(p: &MixedPhasePolynomial, r: &SynthResult) -> f64 {
    let mut lhs = Dense::identity(p.n());
    lhs.relabel(r.input_mapping.as_slice());
    r.gates.iter().for_each(|g| lhs.gate(g));
    let mut rhs = dense_polynomial(p);
    rhs.relabel(r.output_mapping.as_slice());
    lhs.phase_distance(&rhs)
}

// ---------------------------------------------------------------- criteria

fn c1_compliance() -> Outcome {
    let devices = ["line-5", "valencia", "ring-8"];
    let mut jobs = Vec::new();
    for d in devices {
        for m in [1, 10, 50] {
            for c in 0..100u64 {
                for name in PIPELINES {
                    jobs.push((d, m, c, name));
                }
            }
        }
    }
    let bad: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(d, m, c, name)| {
            let topo = Topology::named(d).unwrap();
            let p = random_circuit(topo.n(), m, 1000 * m as u64 + c).unwrap();
            let r = run_pipeline(&p, &topo, &spec(name), c).unwrap();
            (!on_edges(&r.gates, &topo)).then(|| format!("{d} m={m} circuit {c} {name}"))
        })
        .collect();
    if bad.is_empty() {
        Ok(format!("{} runs, every CNOT on an edge", jobs.len()))
    } else {
        Err(format!("{} non-compliant runs, first {}", bad.len(), bad[0]))
    }
}

fn random_tail(p: &mut MixedPhasePolynomial, rng: &mut ChaCha8Rng) {
    let n = p.n();
    let mut t = ParityMatrix::identity(n);
    for _ in 0..rng.gen_range(0..3 * n) {
        let c = rng.gen_range(0..n);
        let tgt = (c + rng.gen_range(1..n)) % n;
        t.apply_cnot(c, tgt).unwrap();
    }
    p.set_tail(t).unwrap();
}

fn c2_soundness() -> Outcome {
    let devices = ["line-3", "grid-2x2", "line-5", "ring-5", "valencia", "yorktown"];
    let mut names: Vec<&str> = PIPELINES.to_vec();
    names.push("Par+RT+An");
    let cases: Vec<u64> = (0..200).collect();
    let worst = cases
        .par_iter()
        .map(|&i| {
            let mut rng = ChaCha8Rng::seed_from_u64(0xC2 ^ i);
            let topo = Topology::named(devices[i as usize % devices.len()]).unwrap();
            let m = rng.gen_range(1..=10);
            let mut p = random_circuit(topo.n(), m, i).unwrap();
            if i % 2 == 1 {
                random_tail(&mut p, &mut rng);
            }
            names
                .iter()
                .map(|name| {
                    let r = run_pipeline(&p, &topo, &spec(name), i).unwrap();
                    (mapped_distance(&p, &r), format!("case {i} {name} on {}", topo.name()))
                })
                .max_by(|a, b| a.0.total_cmp(&b.0))
                .unwrap()
        })
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .unwrap();
    let detail = format!("200 circuits x {} pipelines, worst distance {:.1e}", names.len(), worst.0);
    if worst.0 <= 1e-8 {
        Ok(detail)
    } else {
        Err(format!("{detail} at {}", worst.1))
    }
}

fn c3_involution() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC3);
    let devices = ["valencia", "ring-8", "melbourne"];
    for case in 0..1000 {
        let topo = Topology::named(devices[case % 3]).unwrap();
        let mut p = random_circuit(topo.n(), rng.gen_range(1..20), rng.gen()).unwrap();
        random_tail(&mut p, &mut rng);
        let (a, b) = topo.edges()[rng.gen_range(0..topo.edges().len())];
        let (c, t) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        let before = p.clone();
        p.push_cnot(c, t).unwrap();
        p.push_cnot(c, t).unwrap();
        if p != before {
            return Err(format!("case {case}: CX {c} {t} twice changed the polynomial"));
        }
    }
    Ok("1000 cases restored exactly".into())
}

/// Rows as bitmasks; invertibility by elimination.
fn random_invertible_rows(n: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    loop {
        let rows: Vec<u64> = (0..n).map(|_| rng.gen::<u64>() & ((1 << n) - 1)).collect();
        let mut m = rows.clone();
        let mut rank = 0;
        for col in 0..n {
            if let Some(p) = (rank..n).find(|&r| m[r] >> col & 1 == 1) {
                m.swap(rank, p);
                for r in 0..n {
                    if r != rank && m[r] >> col & 1 == 1 {
                        m[r] ^= m[rank];
                    }
                }
                rank += 1;
            }
        }
        if rank == n {
            return rows;
        }
    }
}

fn c4_permrowcol() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4);
    let devices = [("valencia", 5), ("grid-2x4", 8), ("ring-8", 8), ("melbourne", 14)];
    let mut total = 0;
    for case in 0..200 {
        let (name, n) = devices[case % devices.len()];
        let topo = Topology::named(name).unwrap();
        let rows = random_invertible_rows(n, &mut rng);
        let bools: Vec<Vec<bool>> = rows.iter().map(|r| (0..n).map(|c| r >> c & 1 == 1).collect()).collect();
        let m = ParityMatrix::from_rows(bools.iter().map(|b| BitVec::from_bools(b)).collect()).unwrap();
        let (gates, sigma) = permrowcol(&m, &topo).unwrap();
        if !on_edges(&gates, &topo) || gates.iter().any(|g| !g.is_cnot()) {
            return Err(format!("case {case} on {name}: gate off the device"));
        }
        let mut replay: Vec<u64> = (0..n).map(|i| 1 << i).collect();
        for g in &gates {
            if let Gate::Cnot { control, target } = *g {
                replay[target] ^= replay[control];
            }
        }
        if (0..n).any(|c| replay[sigma.physical(c)] != rows[c]) {
            return Err(format!("case {case} on {name}: replay differs from input"));
        }
        total += gates.len();
    }
    Ok(format!("200 matrices, {total} CNOTs replayed"))
}

fn counts(device: &str, m: usize, circuits: u64, name: &str) -> Vec<usize> {
    let topo = Topology::named(device).unwrap();
    let s = spec(name);
    (0..circuits)
        .into_par_iter()
        .map(|c| {
            let p = random_circuit(topo.n(), m, 0xA000 + c).unwrap();
            run_pipeline(&p, &topo, &s, c).unwrap().cnot_count
        })
        .collect()
}

fn c5_par_vs_sg() -> Outcome {
    let par = mean(&counts("melbourne", 100, 20, "Par"));
    let sg = mean(&counts("melbourne", 100, 20, "SG"));
    let detail = format!("mean Par {par:.2} vs SG {sg:.2}");
    if par < sg { Ok(detail) } else { Err(detail) }
}

fn c6_rt_and_anneal() -> Outcome {
    let sg = mean(&counts("valencia", 50, 20, "SG"));
    let rt = mean(&counts("valencia", 50, 20, "SG+RT"));
    let both = mean(&counts("valencia", 50, 20, "SG+RT->An"));
    let detail = format!("mean SG {sg:.2}, SG+RT {rt:.2}, SG+RT->An {both:.2}");
    if rt <= sg && both <= rt { Ok(detail) } else { Err(detail) }
}

fn c7_naive() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC7);
    for _ in 0..500 {
        let n = rng.gen_range(1..=16);
        let legs: Vec<bool> = loop {
            let l: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            if l.iter().any(|&b| b) {
                break l;
            }
        };
        let k = legs.iter().filter(|&&b| b).count();
        let basis = if rng.gen_bool(0.5) { Basis::Z } else { Basis::X };
        let g = PhaseGadget::new(basis, BitVec::from_bools(&legs), rng.gen_range(0.0..2.0 * PI)).unwrap();
        let c = g.naive_circuit().iter().filter(|g| g.is_cnot()).count();
        if c != 2 * (k - 1) {
            return Err(format!("weight {k} gadget gave {c} CNOTs"));
        }
        if n <= 5 {
            let mut u = Dense::identity(n);
            g.naive_circuit().iter().for_each(|gate| u.gate(gate));
            let mut v = Dense::identity(n);
            v.rotation(basis, mask(g.legs(), n), g.angle());
            if u.phase_distance(&v) > 1e-9 {
                return Err(format!("naive ladder for weight {k} is not the gadget"));
            }
        }
    }
    let zzz = PhaseGadget::z(BitVec::from_bools(&[true, true, true]), 0.3).unwrap();
    let c = zzz.naive_circuit().iter().filter(|g| g.is_cnot()).count();
    if c != 4 {
        return Err(format!("ZZZ gave {c} CNOTs"));
    }
    Ok("500 gadgets at 2(k-1), ZZZ at 4".into())
}

fn c8_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("zxroute-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let run = |jobs: usize, tag: &str| -> Result<Vec<u8>, String> {
        let out = dir.join(format!("{tag}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_zxroute"))
            .args(["bench", "--devices", "line-5,valencia,ring-8", "--gadget-counts", "1,10"])
            .args(["--circuits", "4", "--seed", "17", "--jobs", &jobs.to_string()])
            .arg("--csv-out")
            .arg(&out)
            .stderr(std::process::Stdio::null())
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("bench exited with {status}"));
        }
        std::fs::read(&out).map_err(|e| e.to_string())
    };
    let a = run(1, "a")?;
    let b = run(1, "b")?;
    let c = run(4, "c")?;
    let _ = std::fs::remove_dir_all(&dir);
    let lines = a.iter().filter(|&&b| b == b'\n').count();
    if a == b && a == c {
        Ok(format!("{lines} lines identical across runs and --jobs 1/4"))
    } else {
        Err("CSV bytes differ".into())
    }
}

fn c9_runtime() -> Outcome {
    let topo = Topology::named("singapore").unwrap();
    let p = random_circuit(topo.n(), 100, 0xC9).unwrap();
    let timed = |name: &str| {
        let start = Instant::now();
        let r = run_pipeline(&p, &topo, &spec(name), 1).unwrap();
        assert!(on_edges(&r.gates, &topo));
        start.elapsed()
    };
    let par = timed("Par");
    let full = timed("An+SG+RT");
    let detail = format!("Par {par:.2?}, An+SG+RT {full:.2?} on 20 qubits x 100 gadgets");
    if par < Duration::from_secs(60) && full < Duration::from_secs(30 * 60) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

