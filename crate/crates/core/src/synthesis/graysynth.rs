//! Gray-code style recursion over (parity set, qubit set, target) that only
//! ever removes non-cut vertices from the qubit set.

use std::cmp::Reverse;

use super::paritysynth;
use super::workspace::Workspace;
use crate::gf2::BitVec;
use crate::topology::{cut_vertex_mask, UNREACHABLE};

pub(crate) fn synthesize_region(ws: &mut Workspace<'_>) {
    while ws.live_count() > 0 {
        let before = ws.live_count();
        pass(ws);
        if ws.live_count() == before {
            let id = paritysynth::cheapest(ws);
            paritysynth::extract(ws, id);
        }
    }
}

struct Frame {
    ids: Vec<usize>,
    qubits: BitVec,
    target: Option<usize>,
}

/// One sweep of the recursion. A gadget disturbed by another branch so
/// that it has legs outside its frame is dropped and left for a later pass.
fn pass(ws: &mut Workspace<'_>) {
    let topo = ws.topo();
    let mut stack = vec![Frame {
        ids: ws.live_ids(),
        qubits: topo.all_nodes(),
        target: None,
    }];
    while let Some(Frame {
        ids,
        qubits,
        target,
    }) = stack.pop()
    {
        let in_frame = |ws: &Workspace<'_>, id: usize| {
            ws.legs(id).is_some_and(|legs| {
                legs.ones().all(|q| qubits.get(q)) && target.is_none_or(|i| legs.get(i))
            })
        };
        let mut ids: Vec<usize> = ids.into_iter().filter(|&id| in_frame(ws, id)).collect();
        if let Some(i) = target {
            clear_adjacent_pairs(ws, &ids, &qubits, i);
            ids.retain(|&id| ws.legs(id).is_some());
        }
        if ids.is_empty() || qubits.weight() <= 1 {
            continue;
        }

        let cut = cut_vertex_mask(topo, &qubits).expect("frame qubit sets stay connected");
        let j = qubits
            .ones()
            .filter(|&q| !cut.get(q) && Some(q) != target)
            .max_by_key(|&q| {
                let ones = ids.iter().filter(|&&id| ws.legs(id).unwrap().get(q)).count();
                (ones.max(ids.len() - ones), Reverse(q))
            })
            .expect("a connected graph on two or more nodes has two non-cut vertices");
        let (s1, s0): (Vec<usize>, Vec<usize>) =
            ids.iter().partition(|&&id| ws.legs(id).unwrap().get(j));
        let mut rest = qubits.clone();
        rest.set(j, false);
        match target {
            None => {
                stack.push(Frame {
                    ids: s0,
                    qubits: rest,
                    target: None,
                });
                stack.push(Frame {
                    ids: s1,
                    qubits,
                    target: Some(j),
                });
            }
            Some(i) => {
                if !s1.is_empty() {
                    clear_bit(ws, &s1, j, &qubits);
                }
                stack.push(Frame {
                    ids: s0,
                    qubits: rest.clone(),
                    target: Some(i),
                });
                stack.push(Frame {
                    ids: s1,
                    qubits: rest,
                    target: Some(i),
                });
            }
        }
    }
}

fn all_set(ws: &Workspace<'_>, ids: &[usize], q: usize) -> bool {
    ids.iter().all(|&id| ws.legs(id).is_none_or(|l| l.get(q)))
}

fn none_set(ws: &Workspace<'_>, ids: &[usize], q: usize) -> bool {
    ids.iter().all(|&id| ws.legs(id).is_none_or(|l| !l.get(q)))
}

/// While two adjacent qubits other than the target are legs of every
/// gadget, clears the one farther from the target.
fn clear_adjacent_pairs(ws: &mut Workspace<'_>, ids: &[usize], qubits: &BitVec, target: usize) {
    let topo = ws.topo();
    let dist = topo.bfs_within(target, qubits).dist;
    loop {
        if ids.iter().all(|&id| ws.legs(id).is_none()) {
            return;
        }
        let best = qubits
            .ones()
            .filter(|&a| a != target && all_set(ws, ids, a))
            .flat_map(|a| {
                topo.neighbors(a)
                    .iter()
                    .filter(|&&u| qubits.get(u) && all_set(ws, ids, u))
                    .map(move |&u| (a, u))
            })
            .min_by_key(|&(a, u)| (Reverse(dist[a]), dist[u], a, u));
        match best {
            Some((a, u)) => ws.add_leg(a, u),
            None => return,
        }
    }
}

/// Clears leg `j` from every gadget in `ids`, all of which have it set.
fn clear_bit(ws: &mut Workspace<'_>, ids: &[usize], j: usize, qubits: &BitVec) {
    let topo = ws.topo();
    let nbrs: Vec<usize> = topo
        .neighbors(j)
        .iter()
        .copied()
        .filter(|&u| qubits.get(u))
        .collect();
    if let Some(&u) = nbrs.iter().find(|&&u| all_set(ws, ids, u)) {
        ws.add_leg(j, u);
        return;
    }
    if let Some(&u) = nbrs.iter().find(|&&u| none_set(ws, ids, u)) {
        ws.add_leg(u, j);
        ws.add_leg(j, u);
        return;
    }
    let bfs = topo.bfs_within(j, qubits);
    let w = qubits
        .ones()
        .filter(|&q| q != j && bfs.dist[q] != UNREACHABLE && all_set(ws, ids, q))
        .min_by_key(|&q| (bfs.dist[q], q))
        .expect("the frame target is a leg of every gadget");
    let mut path = vec![w];
    while *path.last().unwrap() != j {
        path.push(bfs.pred[*path.last().unwrap()]);
    }
    path.reverse();
    ws.add_legs(&long_range_ops(&path));
}

/// `add_leg` operations along `path` whose net effect is
/// `legs[path[0]] ^= legs[path[k]]`, with every inner node restored.
/// Uses `4k − 4` operations for a path of `k ≥ 2` edges.
fn long_range_ops(path: &[usize]) -> Vec<(usize, usize)> {
    let k = path.len() - 1;
    debug_assert!(k >= 2);
    let step = |a: usize| (path[a], path[a + 1]);
    let mut ops = Vec::with_capacity(4 * k - 4);
    ops.extend((1..k).rev().map(step));
    ops.push(step(0));
    ops.extend((1..k).map(step));
    ops.extend((1..k - 1).rev().map(step));
    ops.push(step(0));
    ops.extend((1..k - 1).map(step));
    ops
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn long_range_is_a_single_row_addition() {
        for k in 2..7 {
            let path: Vec<usize> = (0..=k).collect();
            let ops = long_range_ops(&path);
            assert_eq!(ops.len(), 4 * k - 4);
            // modelled on basis vectors: x_a is the unit vector e_a
            let mut rows: Vec<u32> = (0..=k).map(|a| 1 << a).collect();
            for (a, b) in ops {
                rows[a] ^= rows[b];
            }
            let mut expect: Vec<u32> = (0..=k).map(|a| 1 << a).collect();
            expect[0] ^= 1 << k;
            assert_eq!(rows, expect);
        }
    }
}
