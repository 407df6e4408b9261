//! Two-order representation of a dimension-two partial order.
//!
//! Merging the closure `G*` with a transitive orientation `O` of its
//! complement gives a tournament that is a linear order; merging it with
//! `O⁻¹` gives a second one. `u` reaches `v` in `G*` exactly when `u` comes
//! first in both orders, so a reachability query is two rank comparisons.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Digraph, Labels, VertexId};
use crate::orient::{orient_complement, EdgeOrientation};

/// A permutation of `0..n` together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearOrder {
    sequence: Vec<VertexId>,
    position: Vec<usize>,
}

impl LinearOrder {
    pub fn from_sequence(sequence: Vec<VertexId>) -> Result<Self> {
        let n = sequence.len();
        let mut position = vec![usize::MAX; n];
        for (rank, &v) in sequence.iter().enumerate() {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if position[v] != usize::MAX {
                return Err(Error::Invariant(format!("vertex {v} repeated in order")));
            }
            position[v] = rank;
        }
        Ok(LinearOrder { sequence, position })
    }

    pub fn sequence(&self) -> &[VertexId] {
        &self.sequence
    }

    /// Rank of each vertex, indexed by vertex id.
    pub fn positions(&self) -> &[usize] {
        &self.position
    }

    pub fn rank(&self, v: VertexId) -> usize {
        self.position[v]
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn reversed(&self) -> LinearOrder {
        let sequence: Vec<VertexId> = self.sequence.iter().rev().copied().collect();
        LinearOrder::from_sequence(sequence).expect("reversal of a permutation")
    }
}

/// Topological order of `gstar ∪ o`, which must be unique.
pub fn linearize(gstar: &Digraph, o: &EdgeOrientation) -> Result<LinearOrder> {
    let n = gstar.n();
    let arcs = gstar.edges().chain(o.arcs().iter().copied());
    let union = Digraph::from_edges(n, arcs)?;
    let mut indeg: Vec<usize> = union
        .vertices()
        .map(|v| union.predecessors(v).len())
        .collect();
    let mut ready: BTreeSet<VertexId> = union.vertices().filter(|&v| indeg[v] == 0).collect();
    let mut sequence = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        if let Some(&w) = ready.first() {
            return Err(Error::NotTotal(v, w));
        }
        sequence.push(v);
        for &w in union.successors(v) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.insert(w);
            }
        }
    }
    if sequence.len() != n {
        return Err(Error::Cyclic);
    }
    LinearOrder::from_sequence(sequence)
}

/// Reachability index over a partial order of dimension at most two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermRep {
    first: LinearOrder,
    second: LinearOrder,
}

impl PermRep {
    pub fn new(first: LinearOrder, second: LinearOrder) -> Result<Self> {
        if first.len() != second.len() {
            return Err(Error::Invariant(
                "orders cover different vertex counts".into(),
            ));
        }
        Ok(PermRep { first, second })
    }

    pub fn first(&self) -> &LinearOrder {
        &self.first
    }

    pub fn second(&self) -> &LinearOrder {
        &self.second
    }

    pub fn len(&self) -> usize {
        self.first.len()
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_empty()
    }

    /// Whether `u` strictly precedes `v` in both orders.
    pub fn reachable(&self, u: VertexId, v: VertexId) -> Result<bool> {
        let n = self.len();
        for x in [u, v] {
            if x >= n {
                return Err(Error::UnknownVertex(x.to_string()));
            }
        }
        Ok(self.first.position[u] < self.first.position[v]
            && self.second.position[u] < self.second.position[v])
    }

    /// Two lines of whitespace-separated labels, one per order.
    pub fn to_text(&self, labels: Option<&Labels>) -> String {
        let line = |o: &LinearOrder| {
            o.sequence()
                .iter()
                .map(|&v| crate::mdtree::vertex_name(labels, v))
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!("{}\n{}\n", line(&self.first), line(&self.second))
    }

    /// Parses [`PermRep::to_text`] output. Vertex ids follow the first line.
    pub fn from_text(text: &str) -> Result<(PermRep, Labels), String> {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let [first, second] = lines[..] else {
            return Err(format!("expected two order lines, found {}", lines.len()));
        };
        let labels = Labels::from_names(first.split_whitespace()).map_err(|e| e.to_string())?;
        let second: Vec<VertexId> = second
            .split_whitespace()
            .map(|name| {
                labels
                    .id(name)
                    .ok_or_else(|| format!("unknown label {name:?} in second order"))
            })
            .collect::<Result<_, String>>()?;
        let first =
            LinearOrder::from_sequence((0..labels.len()).collect()).map_err(|e| e.to_string())?;
        let second = LinearOrder::from_sequence(second).map_err(|e| e.to_string())?;
        if second.len() != first.len() {
            return Err("orders list different numbers of vertices".into());
        }
        Ok((PermRep { first, second }, labels))
    }
}

/// Builds the index from an explicit orientation of the closure's complement.
pub fn build_permrep_with(g: &Digraph, orientation: &EdgeOrientation) -> Result<PermRep> {
    if !g.is_acyclic() {
        return Err(Error::CyclicInput);
    }
    let gstar = g.transitive_closure();
    let first = linearize(&gstar, orientation)?;
    let second = linearize(&gstar, &orientation.inverse())?;
    PermRep::new(first, second)
}

/// Builds the index for an acyclic `g` whose closure has a transitively
/// orientable complement.
pub fn build_permrep(g: &Digraph) -> Result<PermRep> {
    if !g.is_acyclic() {
        return Err(Error::CyclicInput);
    }
    let o = orient_complement(g)?;
    build_permrep_with(g, &o.orientation)
}
