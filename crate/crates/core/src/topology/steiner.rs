//! Approximate Steiner trees: a minimum spanning tree over the metric
//! closure of the terminals, expanded back into graph paths.

use super::{walk_back, Topology, UNREACHABLE};
use crate::gf2::BitVec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerTree {
    /// Sorted, deduplicated terminal set.
    pub terminals: Vec<usize>,
    /// Tree edges as `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl SteinerTree {
    pub fn weight(&self) -> usize {
        self.edges.len()
    }

    /// All nodes touched by the tree (terminals included).
    pub fn nodes(&self) -> Vec<usize> {
        let mut nodes: Vec<usize> = self
            .edges
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .chain(self.terminals.iter().copied())
            .collect();
        nodes.sort_unstable();
        nodes.dedup();
        nodes
    }

    pub fn rooted(&self, root: usize) -> RootedTree {
        RootedTree::new(&self.edges, root)
    }
}

/// Steiner tree over the whole device.
pub fn steiner_approx(topo: &Topology, terminals: &[usize]) -> SteinerTree {
    build(topo, None, terminals)
}

/// Steiner tree restricted to the subgraph induced by `alive`, which must be
/// connected and contain every terminal.
pub fn steiner_within(topo: &Topology, alive: &BitVec, terminals: &[usize]) -> SteinerTree {
    if alive.weight() == topo.n() {
        build(topo, None, terminals)
    } else {
        build(topo, Some(alive), terminals)
    }
}

fn build(topo: &Topology, alive: Option<&BitVec>, terminals: &[usize]) -> SteinerTree {
    let mut terms = terminals.to_vec();
    terms.sort_unstable();
    terms.dedup();
    if terms.len() <= 1 {
        return SteinerTree {
            terminals: terms,
            edges: Vec::new(),
        };
    }

    let owned: Vec<(Vec<u32>, Vec<usize>)> = match alive {
        Some(mask) => terms
            .iter()
            .map(|&s| {
                let b = topo.bfs_within(s, mask);
                (b.dist, b.pred)
            })
            .collect(),
        None => Vec::new(),
    };
    let table = |k: usize| -> (&[u32], &[usize]) {
        match alive {
            Some(_) => (&owned[k].0, &owned[k].1),
            None => topo.bfs_cached(terms[k]),
        }
    };

    // Kruskal over terminal pairs ordered by (distance, a, b).
    let k = terms.len();
    let mut pairs = Vec::with_capacity(k * (k - 1) / 2);
    for a in 0..k {
        let (dist, _) = table(a);
        for b in a + 1..k {
            let d = dist[terms[b]];
            debug_assert_ne!(d, UNREACHABLE, "terminals must be connected");
            pairs.push((d, a, b));
        }
    }
    pairs.sort_unstable();
    let mut uf = UnionFind::new(k);
    let n = topo.n();
    let mut adj = vec![BitVec::zeros(n); n];
    let mut joined = 0;
    for (_, a, b) in pairs {
        if !uf.union(a, b) {
            continue;
        }
        let (_, pred) = table(a);
        let path = walk_back(pred, terms[a], terms[b]);
        for w in path.windows(2) {
            adj[w[0]].set(w[1], true);
            adj[w[1]].set(w[0], true);
        }
        joined += 1;
        if joined == k - 1 {
            break;
        }
    }

    // Break cycles with a BFS spanning tree, then trim non-terminal leaves.
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![terms[0]];
    parent[terms[0]] = terms[0];
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for v in adj[u].ones() {
            if parent[v] == usize::MAX {
                parent[v] = u;
                order.push(v);
            }
        }
    }
    let is_terminal = |v: usize| terms.binary_search(&v).is_ok();
    let mut child_count = vec![0usize; n];
    for &v in &order[1..] {
        child_count[parent[v]] += 1;
    }
    let mut keep = vec![true; n];
    for &v in order.iter().rev() {
        if v != terms[0] && child_count[v] == 0 && !is_terminal(v) {
            keep[v] = false;
            child_count[parent[v]] -= 1;
        }
    }
    let mut edges: Vec<(usize, usize)> = order[1..]
        .iter()
        .filter(|&&v| keep[v])
        .map(|&v| (v.min(parent[v]), v.max(parent[v])))
        .collect();
    edges.sort_unstable();
    SteinerTree {
        terminals: terms,
        edges,
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// A tree with a designated root; children are kept in ascending order.
#[derive(Clone, Debug)]
pub struct RootedTree {
    pub root: usize,
    /// `(parent, child)` edges in post-order: every edge appears after all
    /// edges below its child.
    pub post_order: Vec<(usize, usize)>,
    children: Vec<(usize, Vec<usize>)>,
}

impl RootedTree {
    pub fn new(edges: &[(usize, usize)], root: usize) -> Self {
        let mut nbrs: Vec<(usize, Vec<usize>)> = Vec::new();
        let slot = |nbrs: &mut Vec<(usize, Vec<usize>)>, v: usize| match nbrs
            .iter()
            .position(|(k, _)| *k == v)
        {
            Some(i) => i,
            None => {
                nbrs.push((v, Vec::new()));
                nbrs.len() - 1
            }
        };
        for &(u, v) in edges {
            let i = slot(&mut nbrs, u);
            nbrs[i].1.push(v);
            let j = slot(&mut nbrs, v);
            nbrs[j].1.push(u);
        }
        for (_, list) in &mut nbrs {
            list.sort_unstable();
        }
        let lookup = |v: usize| nbrs.iter().find(|(k, _)| *k == v).map(|(_, l)| l.as_slice());

        let mut children: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut post_order = Vec::with_capacity(edges.len());
        // (node, parent, next neighbour index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        children.push((root, Vec::new()));
        while let Some(top) = stack.last_mut() {
            let (u, p, pos) = *top;
            let list = lookup(u).unwrap_or(&[]);
            if pos < list.len() {
                top.2 += 1;
                let v = list[pos];
                if v != p {
                    if let Some(entry) = children.iter_mut().find(|(k, _)| *k == u) {
                        entry.1.push(v);
                    }
                    children.push((v, Vec::new()));
                    stack.push((v, u, 0));
                }
            } else {
                stack.pop();
                if p != usize::MAX {
                    post_order.push((p, u));
                }
            }
        }
        RootedTree {
            root,
            post_order,
            children,
        }
    }

    pub fn children(&self, v: usize) -> &[usize] {
        self.children
            .iter()
            .find(|(k, _)| *k == v)
            .map(|(_, c)| c.as_slice())
            .unwrap_or(&[])
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.children.iter().map(|(k, _)| *k)
    }

    /// Number of edges on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        fn go(t: &RootedTree, v: usize) -> usize {
            t.children(v).iter().map(|&c| 1 + go(t, c)).max().unwrap_or(0)
        }
        go(self, self.root)
    }
}
