use super::Topology;
use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// Articulation points of the subgraph induced by `alive`.
pub fn cut_vertices(topo: &Topology, alive: &BitVec) -> Result<Vec<usize>> {
    Ok(cut_vertex_mask(topo, alive)?.ones().collect())
}

/// Like [`cut_vertices`], as a membership mask over all nodes.
///
/// Uses the iterative low-link DFS, so the cost is linear in the size of the
/// induced subgraph.
pub fn cut_vertex_mask(topo: &Topology, alive: &BitVec) -> Result<BitVec> {
    let n = topo.n();
    let mut mask = BitVec::zeros(n);
    let Some(root) = alive.first_one() else {
        return Ok(mask);
    };

    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut parent = vec![UNSEEN; n];
    let mut root_children = 0;
    let mut time = 0;
    // (node, next neighbour position)
    let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
    disc[root] = time;
    low[root] = time;

    while let Some(&mut (u, ref mut pos)) = stack.last_mut() {
        let nbrs = topo.neighbors(u);
        if *pos < nbrs.len() {
            let v = nbrs[*pos];
            *pos += 1;
            if !alive.get(v) {
                continue;
            }
            if disc[v] == UNSEEN {
                time += 1;
                disc[v] = time;
                low[v] = time;
                parent[v] = u;
                if u == root {
                    root_children += 1;
                }
                stack.push((v, 0));
            } else if v != parent[u] {
                low[u] = low[u].min(disc[v]);
            }
        } else {
            stack.pop();
            let p = parent[u];
            if p != UNSEEN {
                low[p] = low[p].min(low[u]);
                if p != root && low[u] >= disc[p] {
                    mask.set(p, true);
                }
            }
        }
    }

    if alive.ones().any(|v| disc[v] == UNSEEN) {
        return Err(Error::Disconnected);
    }
    if root_children > 1 {
        mask.set(root, true);
    }
    Ok(mask)
}
