//! Line-oriented text format for polynomials.
//!
//! ```text
//! # comment
//! qubits 3
//! Z 111 0.785398163397448
//! X 011 1.5707963267948966
//! CX 0 1
//! ```
//!
//! Gadget lines give the basis, the legs as a 0/1 string with qubit 0
//! leftmost, and the angle in radians. `CX c t` lines build the tail by
//! applying CNOTs to the identity in file order. An optional `phase <rad>`
//! line carries the global phase.

use std::fmt;
use std::str::FromStr;

use super::{Basis, MixedPhasePolynomial, PhaseGadget};
use crate::error::{Error, Result};
use crate::gf2::{BitVec, ParityMatrix};

impl fmt::Display for MixedPhasePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n)?;
        if self.global_phase != 0.0 {
            writeln!(f, "phase {}", self.global_phase)?;
        }
        for g in &self.gadgets {
            writeln!(f, "{} {} {}", g.basis, g.legs, g.angle)?;
        }
        let cnots = self
            .tail
            .cnot_decomposition()
            .expect("tail of a polynomial is always invertible");
        for (c, t) in cnots {
            writeln!(f, "CX {c} {t}")?;
        }
        Ok(())
    }
}

impl FromStr for MixedPhasePolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (lineno, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `qubits <n>` header"))?;
        let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["qubits", n] => n
                .parse::<usize>()
                .map_err(|e| Error::parse(lineno, format!("bad qubit count: {e}")))?,
            _ => return Err(Error::parse(lineno, "expected `qubits <n>`")),
        };
        if n == 0 {
            return Err(Error::parse(lineno, "qubit count must be positive"));
        }

        let mut poly = MixedPhasePolynomial::new(n);
        let mut tail = ParityMatrix::identity(n);
        for (lineno, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[..] {
                [basis @ ("Z" | "X"), legs, angle] => {
                    let basis = if basis == "Z" { Basis::Z } else { Basis::X };
                    let legs = parse_legs(legs, n).map_err(|m| Error::parse(lineno, m))?;
                    let angle = parse_f64(angle, lineno)?;
                    let gadget = PhaseGadget::new(basis, legs, angle)
                        .map_err(|e| Error::parse(lineno, e.to_string()))?;
                    poly.push_gadget(gadget)?;
                }
                ["CX", c, t] => {
                    let c = parse_usize(c, lineno)?;
                    let t = parse_usize(t, lineno)?;
                    tail.apply_cnot(c, t)
                        .map_err(|e| Error::parse(lineno, e.to_string()))?;
                }
                ["phase", value] => {
                    poly.set_global_phase(parse_f64(value, lineno)?);
                }
                _ => return Err(Error::parse(lineno, format!("unrecognised line `{line}`"))),
            }
        }
        poly.set_tail(tail)?;
        Ok(poly)
    }
}

fn parse_legs(s: &str, n: usize) -> std::result::Result<BitVec, String> {
    if s.len() != n {
        return Err(format!("legs `{s}` should have {n} characters"));
    }
    let bits = s
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(format!("invalid leg character `{other}`")),
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(BitVec::from_bools(&bits))
}

fn parse_f64(s: &str, line: usize) -> Result<f64> {
    s.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::parse(line, format!("bad angle `{s}`")))
}

fn parse_usize(s: &str, line: usize) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| Error::parse(line, format!("bad qubit index `{s}`")))
}
