use super::paritysynth::best_rooted;
use super::permrowcol;
use super::workspace::collapse_ops;
use super::QubitMapping;
use crate::error::Result;
use crate::ir::{Basis, Gate, MixedPhasePolynomial};
use crate::topology::Topology;

/// Each gadget as a Steiner ladder, its rotation and the mirrored ladder,
/// in list order; the tail is realized by PermRowCol.
pub(crate) fn naive_routed(
    p: &MixedPhasePolynomial,
    topo: &Topology,
) -> Result<(Vec<Gate>, QubitMapping)> {
    let mut gates = Vec::new();
    for g in p.gadgets() {
        let tree = best_rooted(topo, g.legs());
        let ladder: Vec<Gate> = collapse_ops(g.legs(), &tree)
            .into_iter()
            .map(|(a, b)| match g.basis() {
                Basis::Z => Gate::cnot(a, b),
                Basis::X => Gate::cnot(b, a),
            })
            .collect();
        let angle = g.angle();
        let qubit = tree.root;
        gates.extend_from_slice(&ladder);
        gates.push(match g.basis() {
            Basis::Z => Gate::Rz { qubit, angle },
            Basis::X => Gate::Rx { qubit, angle },
        });
        gates.extend(ladder.into_iter().rev());
    }
    let (tail, sigma) = permrowcol(p.tail(), topo)?;
    gates.extend(tail);
    Ok((gates, sigma))
}
