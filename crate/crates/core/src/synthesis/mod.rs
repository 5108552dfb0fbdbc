//! Architecture-aware synthesis of mixed phase polynomials.
//!
//! Every backend works on the polynomial relabelled to physical registers.
//! Regions are consumed in list order through a [`Workspace`]; whatever
//! linear residue remains is realized by [`permrowcol`], which may leave
//! the logical qubits permuted across registers.

mod graysynth;
mod paritysynth;
mod permrowcol;
mod routed;
mod workspace;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

pub use permrowcol::permrowcol;
pub(crate) use workspace::Workspace;

use crate::error::{Error, Result};
use crate::gf2::ParityMatrix;
use crate::ir::{cnot_count, Gate, MixedPhasePolynomial};
use crate::topology::Topology;

/// Bijection from logical qubits to physical registers: `perm[q]` is the
/// register holding logical qubit `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QubitMapping(Vec<usize>);

impl QubitMapping {
    pub fn identity(n: usize) -> Self {
        QubitMapping((0..n).collect())
    }

    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidMapping(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(QubitMapping(perm))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn physical(&self, logical: usize) -> usize {
        self.0[logical]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (q, &p) in self.0.iter().enumerate() {
            inv[p] = q;
        }
        QubitMapping(inv)
    }

    /// `self` followed by `next`: `q ↦ next[self[q]]`.
    pub fn then(&self, next: &QubitMapping) -> Self {
        debug_assert_eq!(self.n(), next.n());
        QubitMapping(self.0.iter().map(|&p| next.0[p]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(q, &p)| q == p)
    }
}

impl fmt::Display for QubitMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for QubitMapping {
    type Err = Error;

    /// Accepts whitespace- or comma-separated register indices.
    fn from_str(s: &str) -> Result<Self> {
        let perm = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidMapping(format!("bad register `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(perm)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SynthResult {
    pub gates: Vec<Gate>,
    pub input_mapping: QubitMapping,
    pub output_mapping: QubitMapping,
    pub cnot_count: usize,
    pub elapsed: Duration,
}

impl SynthResult {
    pub(crate) fn new(
        gates: Vec<Gate>,
        input_mapping: QubitMapping,
        output_mapping: QubitMapping,
        elapsed: Duration,
    ) -> Self {
        SynthResult {
            cnot_count: cnot_count(&gates),
            gates,
            input_mapping,
            output_mapping,
            elapsed,
        }
    }

    /// Whether every CNOT acts on an edge of `topo`.
    pub fn is_compliant(&self, topo: &Topology) -> bool {
        is_compliant(&self.gates, topo)
    }
}

pub fn is_compliant(gates: &[Gate], topo: &Topology) -> bool {
    gates.iter().all(|g| match *g {
        Gate::Cnot { control, target } => topo.has_edge(control, target),
        _ => true,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Topology-oblivious ladders and tail; the uncompiled baseline.
    Naive,
    /// One Steiner ladder per gadget, in list order.
    NaiveRouted,
    SteinerGraySynth,
    ParitySynth,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::NaiveRouted => "naive-routed",
            Method::SteinerGraySynth => "SG",
            Method::ParitySynth => "Par",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "naive" | "uncompiled" => Ok(Method::Naive),
            "naive-routed" => Ok(Method::NaiveRouted),
            "sg" | "steiner-graysynth" => Ok(Method::SteinerGraySynth),
            "par" | "paritysynth" => Ok(Method::ParitySynth),
            _ => Err(Error::UnknownMethod(s.to_string())),
        }
    }
}

/// Synthesizes `p` on `topo`, starting from `in_map`.
///
/// The returned circuit `C` satisfies `C · P_in = P_out · U(p)` up to global
/// phase, where `P_π` moves qubit `q` to register `π(q)`.
pub fn synthesize(
    p: &MixedPhasePolynomial,
    topo: &Topology,
    method: Method,
    in_map: &QubitMapping,
) -> Result<SynthResult> {
    check_dims(p, topo, in_map)?;
    let start = Instant::now();
    let physical = p.relabel(in_map.as_slice());
    let (gates, routed) = synthesize_physical(physical, topo, method)?;
    let out = in_map.then(&routed);
    Ok(SynthResult::new(gates, in_map.clone(), out, start.elapsed()))
}

pub(crate) fn check_dims(
    p: &MixedPhasePolynomial,
    topo: &Topology,
    in_map: &QubitMapping,
) -> Result<()> {
    for found in [topo.n(), in_map.n()] {
        if found != p.n() {
            return Err(Error::DimensionMismatch {
                expected: p.n(),
                found,
            });
        }
    }
    Ok(())
}

/// Synthesizes a polynomial already expressed on physical registers.
/// Returns the gates and the register permutation left by the tail.
pub(crate) fn synthesize_physical(
    p: MixedPhasePolynomial,
    topo: &Topology,
    method: Method,
) -> Result<(Vec<Gate>, QubitMapping)> {
    match method {
        Method::Naive => Ok((p.naive_circuit(), QubitMapping::identity(p.n()))),
        Method::NaiveRouted => routed::naive_routed(&p, topo),
        Method::SteinerGraySynth => guarded(p, topo, graysynth::synthesize_region),
        Method::ParitySynth => guarded(p, topo, paritysynth::synthesize_region),
    }
}

/// Region synthesis, unless mirrored per-gadget ladders need fewer CNOTs.
///
/// Collapsing a gadget leaves its CNOTs in front of every later gadget,
/// which can raise their weight; the mirrored ladders never do.
fn guarded(
    p: MixedPhasePolynomial,
    topo: &Topology,
    region: fn(&mut Workspace<'_>),
) -> Result<(Vec<Gate>, QubitMapping)> {
    let ladders = routed::naive_routed(&p, topo)?;
    let regions = by_regions(p, topo, region)?;
    Ok(if cnot_count(&regions.0) <= cnot_count(&ladders.0) {
        regions
    } else {
        ladders
    })
}

/// Steiner-GraySynth with the identity input mapping.
pub fn steiner_graysynth(
    p: &MixedPhasePolynomial,
    topo: &Topology,
    in_map: &QubitMapping,
) -> Result<SynthResult> {
    synthesize(p, topo, Method::SteinerGraySynth, in_map)
}

pub fn paritysynth(
    p: &MixedPhasePolynomial,
    topo: &Topology,
    in_map: &QubitMapping,
) -> Result<SynthResult> {
    synthesize(p, topo, Method::ParitySynth, in_map)
}

fn by_regions(
    p: MixedPhasePolynomial,
    topo: &Topology,
    region: fn(&mut Workspace<'_>),
) -> Result<(Vec<Gate>, QubitMapping)> {
    let input_tail = p.tail().clone();
    let mut ws = Workspace::new(p, topo);
    while ws.next_region() {
        region(&mut ws);
        debug_assert_eq!(ws.live_count(), 0, "region routine must empty the region");
    }
    let (mut gates, tail) = ws.finish();
    let (tail_gates, routed) = finish_tail(&gates, &input_tail, &tail, topo)?;
    gates.extend(tail_gates);
    Ok((gates, routed))
}

/// Realizes the residual tail. Besides PermRowCol on the residue, the
/// emitted CNOTs in reverse followed by the input tail realize it exactly;
/// the cheaper of the two is kept, PermRowCol on ties.
fn finish_tail(
    emitted: &[Gate],
    input_tail: &ParityMatrix,
    residue: &ParityMatrix,
    topo: &Topology,
) -> Result<(Vec<Gate>, QubitMapping)> {
    let direct = permrowcol(residue, topo)?;
    let spent = cnot_count(emitted);
    if spent >= direct.0.len() {
        return Ok(direct);
    }
    let (input_gates, input_routed) = permrowcol(input_tail, topo)?;
    if spent + input_gates.len() >= direct.0.len() {
        return Ok(direct);
    }
    let mut unwind: Vec<Gate> = emitted.iter().rev().filter(|g| g.is_cnot()).copied().collect();
    unwind.extend(input_gates);
    Ok((unwind, input_routed))
}
