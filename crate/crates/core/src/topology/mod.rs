//! Device connectivity graphs.
//!
//! A [`Topology`] is an undirected, connected graph without self-loops. All
//! distances are hop counts; the all-pairs table built at construction is
//! the single place a weighted metric would plug in.

mod cut;
mod devices;
mod steiner;

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::path::Path;

pub use cut::{cut_vertex_mask, cut_vertices};
pub use steiner::{steiner_approx, steiner_within, RootedTree, SteinerTree};

use crate::error::{check_index, Error, Result};
use crate::gf2::BitVec;

pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Topology {
    name: String,
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    dist: Vec<Vec<u32>>,
    pred: Vec<Vec<usize>>,
}

impl PartialEq for Topology {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

/// Single-source BFS result.
#[derive(Clone, Debug)]
pub struct Bfs {
    pub dist: Vec<u32>,
    /// Predecessor on a shortest path from the source; ties go to the
    /// smallest index. `pred[source] == source`; unreachable nodes map to
    /// `usize::MAX`.
    pub pred: Vec<usize>,
}

impl Topology {
    /// Builds a topology, deduplicating repeated edges.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConfig("topology needs at least one node".into()));
        }
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            check_index(u, n)?;
            check_index(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        norm.dedup();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }
        let mut topo = Topology {
            name: format!("custom-{n}"),
            n,
            edges: norm,
            adjacency,
            dist: Vec::new(),
            pred: Vec::new(),
        };
        let all = BitVec::from_indices(n, 0..n)?;
        let tables: Vec<Bfs> = (0..n).map(|s| topo.bfs_within(s, &all)).collect();
        if tables[0].dist.contains(&UNREACHABLE) {
            return Err(Error::Disconnected);
        }
        topo.dist = tables.iter().map(|b| b.dist.clone()).collect();
        topo.pred = tables.into_iter().map(|b| b.pred).collect();
        Ok(topo)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn line(k: usize) -> Result<Self> {
        let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Ok(Self::from_edge_list(k, &edges)?.with_name(format!("line-{k}")))
    }

    pub fn ring(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidConfig(format!("ring needs at least 3 nodes, got {k}")));
        }
        let mut edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        edges.push((k - 1, 0));
        Ok(Self::from_edge_list(k, &edges)?.with_name(format!("ring-{k}")))
    }

    /// `rows × cols` lattice with node `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Ok(Self::from_edge_list(rows * cols, &edges)?.with_name(format!("grid-{rows}x{cols}")))
    }

    pub fn complete(k: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 0..k {
            for v in u + 1..k {
                edges.push((u, v));
            }
        }
        Ok(Self::from_edge_list(k, &edges)?.with_name(format!("complete-{k}")))
    }

    /// Resolves `line-k`, `ring-k`, `grid-RxC`, `complete-k` or one of the
    /// bundled device names.
    pub fn named(name: &str) -> Result<Self> {
        devices::named(name)
    }

    /// Parses the edge-list format: `nodes <n>` then one `u v` per line.
    pub fn from_edge_text(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::parse(i + 1, format!("bad integer `{s}`")))
            };
            match (n, &fields[..]) {
                (None, ["nodes", k]) => n = Some(num(k)?),
                (None, _) => return Err(Error::parse(i + 1, "expected `nodes <n>`")),
                (Some(_), [u, v]) => edges.push((num(u)?, num(v)?)),
                (Some(_), _) => return Err(Error::parse(i + 1, format!("bad edge line `{line}`"))),
            }
        }
        let n = n.ok_or_else(|| Error::parse(1, "missing `nodes <n>` header"))?;
        Self::from_edge_list(n, &edges)
    }

    pub fn from_edge_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "custom".into());
        Ok(Self::from_edge_text(&text)?.with_name(name))
    }

    pub fn to_edge_text(&self) -> String {
        let mut out = format!("nodes {}\n", self.n);
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist[u][v]
    }

    pub fn diameter(&self) -> u32 {
        self.dist.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Shortest path from `u` to `v`, both endpoints included.
    pub fn path(&self, u: usize, v: usize) -> Vec<usize> {
        walk_back(&self.pred[u], u, v)
    }

    pub(crate) fn bfs_cached(&self, source: usize) -> (&[u32], &[usize]) {
        (&self.dist[source], &self.pred[source])
    }

    /// BFS from `source` over the subgraph induced by `alive`.
    pub fn bfs_within(&self, source: usize, alive: &BitVec) -> Bfs {
        let mut dist = vec![UNREACHABLE; self.n];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if alive.get(v) && dist[v] == UNREACHABLE {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        let pred = (0..self.n)
            .map(|v| {
                if v == source {
                    source
                } else if dist[v] == UNREACHABLE {
                    usize::MAX
                } else {
                    // adjacency is sorted, so the first hit is the smallest
                    *self.adjacency[v]
                        .iter()
                        .find(|&&u| alive.get(u) && dist[u] != UNREACHABLE && dist[u] + 1 == dist[v])
                        .expect("reached nodes have a predecessor")
                }
            })
            .collect();
        Bfs { dist, pred }
    }

    pub fn is_connected_within(&self, alive: &BitVec) -> bool {
        match alive.first_one() {
            None => true,
            Some(s) => {
                let bfs = self.bfs_within(s, alive);
                alive.ones().all(|v| bfs.dist[v] != UNREACHABLE)
            }
        }
    }

    pub fn all_nodes(&self) -> BitVec {
        BitVec::from_indices(self.n, 0..self.n).expect("indices in range")
    }
}

pub(crate) fn walk_back(pred: &[usize], source: usize, target: usize) -> Vec<usize> {
    let mut path = vec![target];
    let mut v = target;
    while v != source {
        v = pred[v];
        path.push(v);
    }
    path.reverse();
    path
}
