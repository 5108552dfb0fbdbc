//! OpenQASM 2.0 subset: one `qreg q`, and `cx`, `rz`, `rx` gates.
//!
//! Mappings travel as `// input-mapping: …` and `// output-mapping: …`
//! comments, each listing the physical register of every logical qubit.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ir::Gate;
use crate::synthesis::{QubitMapping, SynthResult};

/// A parsed QASM file.
#[derive(Clone, Debug, PartialEq)]
pub struct QasmCircuit {
    pub n: usize,
    pub gates: Vec<Gate>,
    pub input_mapping: Option<QubitMapping>,
    pub output_mapping: Option<QubitMapping>,
}

pub fn export_qasm(gates: &[Gate], n: usize) -> String {
    render(gates, n, None)
}

/// Exports a synthesis result together with its mappings.
pub fn export_result(r: &SynthResult) -> String {
    render(&r.gates, r.input_mapping.n(), Some((&r.input_mapping, &r.output_mapping)))
}

fn render(gates: &[Gate], n: usize, maps: Option<(&QubitMapping, &QubitMapping)>) -> String {
    let mut s = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    if let Some((input, output)) = maps {
        let _ = writeln!(s, "// input-mapping: {input}");
        let _ = writeln!(s, "// output-mapping: {output}");
    }
    let _ = writeln!(s, "qreg q[{n}];");
    for g in gates {
        let _ = match *g {
            Gate::Cnot { control, target } => writeln!(s, "cx q[{control}],q[{target}];"),
            Gate::Rz { qubit, angle } => writeln!(s, "rz({angle:?}) q[{qubit}];"),
            Gate::Rx { qubit, angle } => writeln!(s, "rx({angle:?}) q[{qubit}];"),
        };
    }
    s
}

/// Whether `text` looks like QASM rather than the polynomial format.
pub fn is_qasm(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with("//"))
        .is_some_and(|l| l.starts_with("OPENQASM"))
}

pub fn import_qasm(text: &str) -> Result<QasmCircuit> {
    let mut n = None;
    let mut gates = Vec::new();
    let mut input_mapping: Option<QubitMapping> = None;
    let mut output_mapping: Option<QubitMapping> = None;
    let mut seen_header = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |m: &str| Error::parse(line_no, m);
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix("//") {
            let comment = comment.trim();
            if let Some(rest) = comment.strip_prefix("input-mapping:") {
                input_mapping = Some(rest.parse().map_err(|_| err("bad input mapping"))?);
            } else if let Some(rest) = comment.strip_prefix("output-mapping:") {
                output_mapping = Some(rest.parse().map_err(|_| err("bad output mapping"))?);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let stmt = line
            .strip_suffix(';')
            .ok_or_else(|| err("missing ';'"))?
            .trim();
        if !seen_header {
            if stmt != "OPENQASM 2.0" {
                return Err(err("expected 'OPENQASM 2.0;'"));
            }
            seen_header = true;
            continue;
        }
        if stmt.starts_with("include") {
            continue;
        }
        if let Some(rest) = stmt.strip_prefix("qreg") {
            if n.is_some() {
                return Err(err("only one register is supported"));
            }
            n = Some(register(rest.trim(), &err)?);
            continue;
        }
        let width = n.ok_or_else(|| err("gate before 'qreg'"))?;
        let qubit = |s: &str| -> Result<usize> {
            let q = register(s.trim(), &err)?;
            if q >= width {
                return Err(err("qubit index out of range"));
            }
            Ok(q)
        };
        if let Some(args) = stmt.strip_prefix("cx ") {
            let (c, t) = args.split_once(',').ok_or_else(|| err("cx needs two qubits"))?;
            let (control, target) = (qubit(c)?, qubit(t)?);
            if control == target {
                return Err(err("cx on a single qubit"));
            }
            gates.push(Gate::cnot(control, target));
        } else if let Some(rest) = stmt.strip_prefix("rz(").or_else(|| stmt.strip_prefix("rx(")) {
            let (angle, q) = rest.split_once(')').ok_or_else(|| err("missing ')'"))?;
            let angle = parse_angle(angle).ok_or_else(|| err("bad angle"))?;
            let qubit = qubit(q)?;
            gates.push(if stmt.starts_with("rz") {
                Gate::Rz { qubit, angle }
            } else {
                Gate::Rx { qubit, angle }
            });
        } else {
            return Err(err("unsupported statement"));
        }
    }
    let n = n.ok_or_else(|| Error::parse(text.lines().count(), "missing 'qreg'"))?;
    for m in [&input_mapping, &output_mapping].into_iter().flatten() {
        if m.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: m.n() });
        }
    }
    Ok(QasmCircuit { n, gates, input_mapping, output_mapping })
}

/// `q[k]` to `k`.
fn register(s: &str, err: &dyn Fn(&str) -> Error) -> Result<usize> {
    s.strip_prefix("q[")
        .and_then(|r| r.strip_suffix(']'))
        .and_then(|k| k.trim().parse().ok())
        .ok_or_else(|| err("expected q[index]"))
}

/// A float, or `[-][a*]pi[/b]`.
fn parse_angle(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Ok(v) = s.parse::<f64>() {
        return Some(v);
    }
    let (sign, s) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim()),
        None => (1.0, s),
    };
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim().parse::<f64>().ok()?),
        None => (s, 1.0),
    };
    let coeff = match num.strip_suffix("pi") {
        Some("") => 1.0,
        Some(c) => c.trim().strip_suffix('*')?.trim().parse::<f64>().ok()?,
        None => return None,
    };
    Some(sign * coeff * std::f64::consts::PI / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn cnot_line_format() {
        let s = export_qasm(&[Gate::cnot(0, 1)], 2);
        assert!(s.contains("cx q[0],q[1];"));
    }

    #[test]
    fn empty_circuit_is_header_and_register() {
        assert_eq!(export_qasm(&[], 3), "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\n");
    }

    #[test]
    fn round_trip_random_circuits() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let n = rng.gen_range(2..9);
            let gates: Vec<Gate> = (0..rng.gen_range(0..40))
                .map(|_| {
                    let q = rng.gen_range(0..n);
                    match rng.gen_range(0..3) {
                        0 => Gate::cnot(q, (q + rng.gen_range(1..n)) % n),
                        1 => Gate::Rz { qubit: q, angle: rng.gen_range(-7.0..7.0) },
                        _ => Gate::Rx { qubit: q, angle: rng.gen_range(-7.0..7.0) },
                    }
                })
                .collect();
            let c = import_qasm(&export_qasm(&gates, n)).unwrap();
            assert_eq!(c.n, n);
            assert_eq!(c.gates, gates);
            assert!(c.input_mapping.is_none());
        }
    }

    #[test]
    fn mappings_survive_the_round_trip() {
        let r = SynthResult {
            gates: vec![Gate::cnot(2, 0)],
            input_mapping: QubitMapping::new(vec![1, 2, 0]).unwrap(),
            output_mapping: QubitMapping::new(vec![2, 0, 1]).unwrap(),
            cnot_count: 1,
            elapsed: Default::default(),
        };
        let text = export_result(&r);
        assert!(is_qasm(&text));
        let c = import_qasm(&text).unwrap();
        assert_eq!(c.input_mapping.as_ref(), Some(&r.input_mapping));
        assert_eq!(c.output_mapping.as_ref(), Some(&r.output_mapping));
    }

    #[test]
    fn pi_expressions() {
        let t = "OPENQASM 2.0;\nqreg q[1];\nrz(pi/4) q[0];\nrx(-3*pi/2) q[0];\nrz(pi) q[0];\n";
        let c = import_qasm(t).unwrap();
        let angles: Vec<f64> = c
            .gates
            .iter()
            .map(|g| match *g {
                Gate::Rz { angle, .. } | Gate::Rx { angle, .. } => angle,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(angles, vec![PI / 4.0, -1.5 * PI, PI]);
    }

    #[test]
    fn malformed_input() {
        for bad in [
            "qreg q[2];",
            "OPENQASM 2.0;\ncx q[0],q[1];",
            "OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[2];",
            "OPENQASM 2.0;\nqreg q[2];\ncx q[1],q[1];",
            "OPENQASM 2.0;\nqreg q[2];\nh q[0];",
            "OPENQASM 2.0;\nqreg q[2];\nrz(foo) q[0];",
            "OPENQASM 2.0;\nqreg q[2]",
            "OPENQASM 2.0;\n// input-mapping: 0 1 2\nqreg q[2];",
        ] {
            assert!(import_qasm(bad).is_err(), "{bad}");
        }
    }
}
