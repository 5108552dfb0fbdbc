use super::workspace::{collapse_ops, Workspace};
use crate::gf2::BitVec;
use crate::topology::{steiner_approx, RootedTree, Topology};

/// Greedy parity ordering: repeatedly collapse the region gadget whose
/// Steiner tree is smallest.
pub(crate) fn synthesize_region(ws: &mut Workspace<'_>) {
    while ws.live_count() > 0 {
        let id = cheapest(ws);
        extract(ws, id);
    }
}

/// Live gadget with the fewest Steiner-tree edges; ties go to the first.
pub(crate) fn cheapest(ws: &Workspace<'_>) -> usize {
    ws.live_ids()
        .into_iter()
        .min_by_key(|&id| {
            let legs: Vec<usize> = ws.legs(id).expect("live id").ones().collect();
            steiner_approx(ws.topo(), &legs).weight()
        })
        .expect("region is not empty")
}

/// Collapses gadget `id` onto a single leg; it is emitted as a rotation on
/// the last operation.
pub(crate) fn extract(ws: &mut Workspace<'_>, id: usize) {
    let legs = ws.legs(id).expect("live id").clone();
    let tree = best_rooted(ws.topo(), &legs);
    let ops = collapse_ops(&legs, &tree);
    ws.add_legs(&ops);
    debug_assert!(ws.legs(id).is_none());
}

/// Steiner tree over `legs` rooted at the leg giving the shallowest tree;
/// ties go to the lowest index.
pub(crate) fn best_rooted(topo: &Topology, legs: &BitVec) -> RootedTree {
    let terminals: Vec<usize> = legs.ones().collect();
    let tree = steiner_approx(topo, &terminals);
    terminals
        .iter()
        .map(|&root| tree.rooted(root))
        .min_by_key(|t| t.depth())
        .expect("gadgets have at least one leg")
}
