use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ir::{Gate, MixedPhasePolynomial};
use crate::synthesis::{check_dims, synthesize_physical, Method, QubitMapping, SynthResult};
use crate::topology::Topology;

/// Metropolis acceptance: `1` for `delta ≤ 0`, else `exp(−delta / T)`.
///
/// # Panics
///
/// If `temperature` is not positive.
pub fn accept_probability(delta: i64, temperature: f64) -> f64 {
    assert!(temperature > 0.0, "temperature must be positive");
    if delta <= 0 {
        1.0
    } else {
        (-(delta as f64) / temperature).exp()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnealConfig {
    pub iterations: usize,
    pub t_initial: f64,
    pub t_final: f64,
    /// Number of independent CNOT layers available to moves.
    pub cnot_blocks: usize,
    pub seed: u64,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig {
            iterations: 100,
            t_initial: 10.0,
            t_final: 0.1,
            cnot_blocks: 5,
            seed: 0,
        }
    }
}

impl AnnealConfig {
    pub fn with_iterations(iterations: usize, seed: u64) -> Self {
        AnnealConfig {
            iterations,
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_final > 0.0 && self.t_initial >= self.t_final && self.t_initial.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "need t_initial >= t_final > 0, got {} and {}",
                self.t_initial, self.t_final
            )));
        }
        if self.cnot_blocks == 0 {
            return Err(Error::InvalidConfig("cnot_blocks must be at least 1".into()));
        }
        Ok(())
    }

    /// Geometric schedule `t_i · (t_f / t_i)^(k / iterations)`.
    pub fn temperature(&self, k: usize) -> f64 {
        if self.iterations == 0 {
            return self.t_initial;
        }
        let frac = k as f64 / self.iterations as f64;
        self.t_initial * (self.t_final / self.t_initial).powf(frac)
    }
}

/// CNOT layers in front of a polynomial that has absorbed them.
///
/// Invariant: `prefix; poly` has the unitary of the original polynomial.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Layered {
    layers: Vec<Vec<(usize, usize)>>,
    pub poly: MixedPhasePolynomial,
}

/// How to revert a toggle.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Undo {
    Appended { layer: usize },
    Removed { layer: usize, pos: usize, cnot: (usize, usize) },
}

impl Layered {
    pub fn new(poly: MixedPhasePolynomial, blocks: usize) -> Self {
        Layered {
            layers: vec![Vec::new(); blocks],
            poly,
        }
    }

    pub fn prefix(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.layers.iter().flatten().copied()
    }

    fn offset(&self, layer: usize) -> usize {
        self.layers[..layer].iter().map(Vec::len).sum()
    }

    /// Replaces the prefix from flat index `from` on, keeping `poly`
    /// consistent by unpushing the old suffix and pushing the new one.
    fn splice(&mut self, layer: usize, edit: impl FnOnce(&mut Vec<(usize, usize)>), from: usize) {
        let old: Vec<_> = self.prefix().skip(from).collect();
        for &(c, t) in old.iter().rev() {
            self.poly.push_cnot(c, t).expect("prefix CNOTs are valid");
        }
        edit(&mut self.layers[layer]);
        let new: Vec<_> = self.prefix().skip(from).collect();
        for (c, t) in new {
            self.poly.push_cnot(c, t).expect("prefix CNOTs are valid");
        }
    }

    /// Removes `cnot` from `layer` if present, else appends it.
    pub fn toggle(&mut self, layer: usize, cnot: (usize, usize)) -> Undo {
        let base = self.offset(layer);
        match self.layers[layer].iter().position(|&g| g == cnot) {
            Some(pos) => {
                self.splice(layer, |l| {
                    l.remove(pos);
                }, base + pos);
                Undo::Removed { layer, pos, cnot }
            }
            None => {
                let end = base + self.layers[layer].len();
                self.splice(layer, |l| l.push(cnot), end);
                Undo::Appended { layer }
            }
        }
    }

    pub fn undo(&mut self, undo: Undo) {
        match undo {
            Undo::Appended { layer } => {
                let last = self.offset(layer) + self.layers[layer].len() - 1;
                self.splice(layer, |l| {
                    l.pop();
                }, last);
            }
            Undo::Removed { layer, pos, cnot } => {
                let at = self.offset(layer) + pos;
                self.splice(layer, |l| l.insert(pos, cnot), at);
            }
        }
    }

    /// Prefix CNOTs followed by a full inner synthesis of `poly`.
    fn evaluate(&self, topo: &Topology, inner: Method) -> Result<(Vec<Gate>, QubitMapping)> {
        let mut gates: Vec<Gate> = self.prefix().map(|(c, t)| Gate::cnot(c, t)).collect();
        let (body, routed) = synthesize_physical(self.poly.clone(), topo, inner)?;
        gates.extend(body);
        Ok((gates, routed))
    }
}

/// Simulated annealing over CNOT layers prepended to `p`.
///
/// Each move toggles a random oriented edge CNOT in a random layer; the
/// cost is the CNOT count of the prefix plus a full synthesis with `inner`.
/// Returns the best circuit seen, starting with plain synthesis.
pub fn anneal(
    p: &MixedPhasePolynomial,
    topo: &Topology,
    cfg: &AnnealConfig,
    inner: Method,
    in_map: &QubitMapping,
) -> Result<SynthResult> {
    cfg.validate()?;
    check_dims(p, topo, in_map)?;
    let start = Instant::now();
    let mut state = Layered::new(p.relabel(in_map.as_slice()), cfg.cnot_blocks);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut best = state.evaluate(topo, inner)?;
    let mut best_cost = crate::ir::cnot_count(&best.0);
    let mut current = best_cost;
    let edges = topo.edges();

    for k in 0..cfg.iterations {
        if edges.is_empty() {
            break;
        }
        let layer = rng.gen_range(0..cfg.cnot_blocks);
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        let cnot = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
        let undo = state.toggle(layer, cnot);

        let candidate = state.evaluate(topo, inner)?;
        let cost = crate::ir::cnot_count(&candidate.0);
        let delta = cost as i64 - current as i64;
        let accepted =
            delta <= 0 || rng.gen::<f64>() < accept_probability(delta, cfg.temperature(k));
        if accepted {
            current = cost;
            if cost < best_cost {
                best_cost = cost;
                best = candidate;
            }
        } else {
            state.undo(undo);
        }
    }

    let (gates, routed) = best;
    Ok(SynthResult::new(
        gates,
        in_map.clone(),
        in_map.then(&routed),
        start.elapsed(),
    ))
}
