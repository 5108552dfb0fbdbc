use super::QubitMapping;
use crate::error::{Error, Result};
use crate::gf2::{BitVec, ParityMatrix};
use crate::ir::Gate;
use crate::topology::{cut_vertex_mask, steiner_within, RootedTree, Topology};

/// Realizes `m` up to a permutation of registers.
///
/// Returns CNOTs and `σ` such that replaying the CNOTs on the identity
/// yields `P_σ · m`, i.e. register `σ[c]` ends up holding row `c` of `m`.
/// Every CNOT lies on an edge of `topo`.
pub fn permrowcol(m: &ParityMatrix, topo: &Topology) -> Result<(Vec<Gate>, QubitMapping)> {
    let n = m.n();
    if topo.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: topo.n(),
        });
    }
    let mut state = Reduction {
        a: m.invert()?,
        inv: m.clone(),
        gates: Vec::new(),
    };
    let mut alive = topo.all_nodes();
    let mut sigma = vec![usize::MAX; n];

    while let Some((r, c)) = state.pick_pivot(topo, &alive)? {
        state.eliminate_column(topo, &alive, r, c);
        state.eliminate_row(topo, &alive, r, c);
        alive.set(r, false);
        sigma[c] = r;
    }
    let sigma = QubitMapping::new(sigma).expect("each column is pivoted exactly once");
    Ok((state.gates, sigma))
}

/// Row-reduces `a = m⁻¹` to a permutation; `inv` tracks `a⁻¹`.
struct Reduction {
    a: ParityMatrix,
    inv: ParityMatrix,
    gates: Vec<Gate>,
}

impl Reduction {
    /// Row `dst ^= row src`, recorded as `CNOT(src, dst)`.
    fn add_row(&mut self, dst: usize, src: usize) {
        self.a.add_row(dst, src);
        // a ← E·a implies a⁻¹ ← a⁻¹·E: column src ^= column dst
        self.inv
            .prepend_cnot(src, dst)
            .expect("rows are distinct and in range");
        self.gates.push(Gate::cnot(src, dst));
    }

    /// The `(row, column)` pair with `a[r][c] = 1`, `r` not a cut vertex of
    /// the remaining graph, minimizing row weight plus column weight.
    fn pick_pivot(&self, topo: &Topology, alive: &BitVec) -> Result<Option<(usize, usize)>> {
        if alive.is_zero() {
            return Ok(None);
        }
        let cut = cut_vertex_mask(topo, alive)?;
        let n = self.a.n();
        let mut col_weight = vec![0usize; n];
        for r in alive.ones() {
            for c in self.a.row(r).ones() {
                col_weight[c] += 1;
            }
        }
        let col_weight = &col_weight;
        let best = alive
            .ones()
            .filter(|&r| !cut.get(r))
            .flat_map(|r| {
                let rw = self.a.row(r).weight();
                self.a.row(r).ones().map(move |c| (rw + col_weight[c], r, c))
            })
            .min();
        Ok(best.map(|(_, r, c)| (r, c)))
    }

    /// Makes column `c` equal to `e_r` using a Steiner tree over the rows
    /// that have a one in it.
    fn eliminate_column(&mut self, topo: &Topology, alive: &BitVec, r: usize, c: usize) {
        let mut terminals: Vec<usize> = alive.ones().filter(|&i| self.a.get(i, c)).collect();
        terminals.push(r);
        let tree = steiner_within(topo, alive, &terminals).rooted(r);
        for &(p, ch) in &tree.post_order {
            if !self.a.get(p, c) && self.a.get(ch, c) {
                self.add_row(p, ch);
            }
        }
        for &(p, ch) in &tree.post_order {
            debug_assert!(self.a.get(ch, c) && self.a.get(p, c));
            self.add_row(ch, p);
        }
    }

    /// Makes row `r` equal to `e_c` by adding in the remaining rows whose
    /// sum with row `r` is `e_c`.
    fn eliminate_row(&mut self, topo: &Topology, alive: &BitVec, r: usize, c: usize) {
        let combo = self.inv.row(c).clone();
        debug_assert!(combo.get(r));
        debug_assert!(combo.ones().all(|i| alive.get(i)));
        if combo.weight() == 1 {
            return;
        }
        let terminals: Vec<usize> = combo.ones().collect();
        let tree = steiner_within(topo, alive, &terminals).rooted(r);
        for &child in tree.children(r) {
            self.accumulate(&tree, &combo, child, r);
        }
        debug_assert_eq!(self.a.row(r), &BitVec::unit(self.a.n(), c));
    }

    /// Adds the sum of the selected rows in the subtree of `v` onto `parent`.
    fn accumulate(&mut self, tree: &RootedTree, selected: &BitVec, v: usize, parent: usize) {
        if !selected.get(v) {
            self.add_row(parent, v);
        }
        for &child in tree.children(v) {
            self.accumulate(tree, selected, child, v);
        }
        self.add_row(parent, v);
    }
}
