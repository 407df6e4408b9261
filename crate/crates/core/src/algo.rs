//! Reachability primitives: topological order, transitive closure and
//! reduction, strongly connected components.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{Digraph, Partition, VertexId, VertexSet};

/// Kahn's algorithm; `None` if the graph has a cycle. Ties are broken by
/// smallest vertex id.
pub fn topological_order(g: &Digraph) -> Option<Vec<VertexId>> {
    let n = g.n();
    let mut indeg: Vec<usize> = g.vertices().map(|v| g.predecessors(v).len()).collect();
    let mut ready: std::collections::BTreeSet<VertexId> =
        g.vertices().filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &w in g.successors(v) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.insert(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Vertices reachable from each vertex by a nonempty path.
pub(crate) fn reachability(g: &Digraph) -> Vec<FixedBitSet> {
    let n = g.n();
    let mut reach = Vec::with_capacity(n);
    let mut stack = Vec::new();
    for s in g.vertices() {
        let mut seen = FixedBitSet::with_capacity(n);
        stack.extend_from_slice(g.successors(s));
        while let Some(v) = stack.pop() {
            if seen.put(v) {
                continue;
            }
            stack.extend(g.successors(v).iter().filter(|&&w| !seen.contains(w)));
        }
        reach.push(seen);
    }
    reach
}

impl Digraph {
    /// Minimal transitive superset of the arc set.
    pub fn transitive_closure(&self) -> Digraph {
        let reach = reachability(self);
        let arcs = reach
            .iter()
            .enumerate()
            .flat_map(|(a, r)| r.ones().map(move |b| (a, b)));
        Digraph::from_arcs_lossy(self.n(), arcs.collect::<Vec<_>>()).relabelled_like(self)
    }

    /// The unique minimal subgraph with the same transitive closure.
    /// Only defined for acyclic graphs.
    pub fn transitive_reduction(&self) -> Result<Digraph> {
        if !self.is_acyclic() {
            return Err(Error::CyclicInput);
        }
        let reach = reachability(self);
        let arcs = self.edges().filter(|&(a, b)| {
            !self
                .successors(a)
                .iter()
                .any(|&w| w != b && reach[w].contains(b))
        });
        Ok(Digraph::from_arcs_lossy(self.n(), arcs.collect::<Vec<_>>()).relabelled_like(self))
    }

    /// Contracts strongly connected components. Blocks are ordered by their
    /// smallest member; the returned graph is acyclic.
    pub fn scc_contract(&self) -> (Digraph, Partition) {
        let mut blocks: Vec<VertexSet> = strongly_connected_components(self)
            .into_iter()
            .map(VertexSet::new)
            .collect();
        blocks.sort();
        let partition = Partition::new(self.n(), blocks).expect("components partition V");
        let quotient = self.contract(&partition);
        (quotient, partition)
    }
}

/// Iterative Tarjan.
pub fn strongly_connected_components(g: &Digraph) -> Vec<Vec<VertexId>> {
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next = 0;
    // (vertex, position in successor list)
    let mut call: Vec<(VertexId, usize)> = Vec::new();

    for root in g.vertices() {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = g.successors(v).get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                components.push(component);
            }
        }
    }
    components
}
