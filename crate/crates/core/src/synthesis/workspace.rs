use crate::gf2::{BitVec, ParityMatrix};
use crate::ir::{Basis, Gate, MixedPhasePolynomial, PhaseGadget};
use crate::topology::{RootedTree, Topology};

/// Synthesis state: emitted gates, then the active region, then the rest.
///
/// Invariant: `gates; region; rest` has the unitary of the input polynomial.
/// Region gadgets keep stable ids; an id goes dead once its gadget has been
/// emitted as a rotation.
pub(crate) struct Workspace<'t> {
    topo: &'t Topology,
    basis: Basis,
    region: Vec<Option<PhaseGadget>>,
    live: usize,
    rest: MixedPhasePolynomial,
    gates: Vec<Gate>,
}

impl<'t> Workspace<'t> {
    pub fn new(p: MixedPhasePolynomial, topo: &'t Topology) -> Self {
        debug_assert_eq!(p.n(), topo.n());
        Workspace {
            topo,
            basis: Basis::Z,
            region: Vec::new(),
            live: 0,
            rest: p,
            gates: Vec::new(),
        }
    }

    pub fn topo(&self) -> &'t Topology {
        self.topo
    }

    /// Loads the next nonempty region once the current one is exhausted.
    /// Returns `false` when no gadgets remain.
    pub fn next_region(&mut self) -> bool {
        while self.live == 0 {
            let len = self.rest.first_region_len();
            if len == 0 {
                self.region.clear();
                return false;
            }
            self.basis = self.rest.gadgets()[0].basis();
            self.region = self.rest.gadgets_mut().drain(..len).map(Some).collect();
            self.live = len;
            for id in 0..len {
                self.emit_if_single(id);
            }
        }
        true
    }

    pub fn live_count(&self) -> usize {
        self.live
    }

    pub fn live_ids(&self) -> Vec<usize> {
        (0..self.region.len())
            .filter(|&id| self.region[id].is_some())
            .collect()
    }

    pub fn legs(&self, id: usize) -> Option<&BitVec> {
        self.region[id].as_ref().map(|g| g.legs())
    }

    /// `legs[a] ^= legs[b]` for every gadget in the region, via one CNOT on
    /// the edge `{a, b}`.
    pub fn add_leg(&mut self, a: usize, b: usize) {
        let (control, target) = match self.basis {
            Basis::Z => (a, b),
            Basis::X => (b, a),
        };
        self.push(control, target);
    }

    /// Applies `add_leg` for each `(a, b)` in order.
    pub fn add_legs(&mut self, ops: &[(usize, usize)]) {
        for &(a, b) in ops {
            self.add_leg(a, b);
        }
    }

    fn push(&mut self, control: usize, target: usize) {
        debug_assert!(self.topo.has_edge(control, target));
        self.gates.push(Gate::cnot(control, target));
        for id in 0..self.region.len() {
            if let Some(g) = &mut self.region[id] {
                g.conjugate_cnot(control, target);
                self.emit_if_single(id);
            }
        }
        self.rest
            .push_cnot(control, target)
            .expect("edges are valid qubit pairs");
    }

    fn emit_if_single(&mut self, id: usize) {
        if let Some(rot) = self.region[id].as_ref().and_then(PhaseGadget::as_rotation) {
            self.gates.push(rot);
            self.region[id] = None;
            self.live -= 1;
        }
    }

    /// Emitted gates and the residual linear section.
    pub fn finish(self) -> (Vec<Gate>, ParityMatrix) {
        debug_assert!(self.live == 0 && self.rest.is_empty());
        (self.gates, self.rest.tail().clone())
    }
}

/// `add_leg` operations that reduce `legs` to the single leg `tree.root`.
///
/// The tree must span every leg. Nodes without a leg are first filled
/// from below, then every non-root node is cleared from its parent; both
/// sweeps run leaves first.
pub(crate) fn collapse_ops(legs: &BitVec, tree: &RootedTree) -> Vec<(usize, usize)> {
    let mut bits = legs.clone();
    let mut ops = Vec::new();
    for &(p, c) in &tree.post_order {
        if !bits.get(p) && bits.get(c) {
            bits.flip(p);
            ops.push((p, c));
        }
    }
    for &(p, c) in &tree.post_order {
        debug_assert!(bits.get(p) && bits.get(c));
        bits.flip(c);
        ops.push((c, p));
    }
    ops
}
