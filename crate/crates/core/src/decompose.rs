//! Polynomial-time modular decomposition.
//!
//! Strong modules are found by splitter closure. For every vertex pair the
//! smallest module containing it is grown by repeatedly absorbing splitters.
//! A module is strong iff none of these pair closures overlaps it, so each
//! pair closure is widened by absorbing overlapping closures until it is
//! stable, which yields the smallest strong module containing the pair.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{Digraph, Partition, VertexId, VertexSet};
use crate::mdtree::{classify_quotient, unique_total_order, MDTree, ModuleKind, Term};

/// Row-major adjacency in both directions, as bitsets.
struct Adjacency {
    succ: Vec<FixedBitSet>,
    pred: Vec<FixedBitSet>,
}

impl Adjacency {
    fn new(g: &Digraph) -> Self {
        let n = g.n();
        let row = |list: &[VertexId]| {
            let mut row = FixedBitSet::with_capacity(n);
            list.iter().for_each(|&w| row.insert(w));
            row
        };
        Adjacency {
            succ: g.vertices().map(|v| row(g.successors(v))).collect(),
            pred: g.vertices().map(|v| row(g.predecessors(v))).collect(),
        }
    }

    /// `x` sees some but not all of `set` along successor or predecessor arcs.
    fn splits(&self, x: VertexId, set: &FixedBitSet, size: usize) -> bool {
        let s = self.succ[x].intersection_count(set);
        let p = self.pred[x].intersection_count(set);
        (s != 0 && s != size) || (p != 0 && p != size)
    }
}

fn smallest_module_containing(adj: &Adjacency, n: usize, u: VertexId, v: VertexId) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(n);
    set.insert(u);
    set.insert(v);
    let mut size = 2;
    loop {
        let splitters: Vec<VertexId> = (0..n)
            .filter(|&x| !set.contains(x) && adj.splits(x, &set, size))
            .collect();
        if splitters.is_empty() {
            return set;
        }
        for x in splitters {
            set.insert(x);
            size += 1;
        }
    }
}

fn overlaps(a: &FixedBitSet, b: &FixedBitSet) -> bool {
    !a.is_disjoint(b) && !a.is_subset(b) && !b.is_subset(a)
}

/// Strong modules of an arbitrary digraph, singletons and `V` included.
pub fn strong_modules(g: &Digraph) -> BTreeSet<VertexSet> {
    let n = g.n();
    let adj = Adjacency::new(g);
    let mut closures: Vec<FixedBitSet> = Vec::new();
    let mut seen = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            let m = smallest_module_containing(&adj, n, u, v);
            let key: Vec<usize> = m.ones().collect();
            if seen.insert(key) {
                closures.push(m);
            }
        }
    }

    let mut strong: BTreeSet<VertexSet> = (0..n).map(VertexSet::singleton).collect();
    if n > 0 {
        strong.insert(VertexSet::full(n));
    }
    for start in &closures {
        let mut m = start.clone();
        loop {
            let before = m.count_ones(..);
            for other in &closures {
                if overlaps(&m, other) {
                    m.union_with(other);
                }
            }
            if m.count_ones(..) == before {
                break;
            }
        }
        strong.insert(m.ones().collect());
    }
    strong
}

/// Arranges a laminar family into a term, classifying each internal node by
/// its child quotient in `g`. Ordered children follow the quotient's order.
fn assemble(g: &Digraph, family: &BTreeSet<VertexSet>) -> Result<Term> {
    let mut sets: Vec<&VertexSet> = family.iter().collect();
    sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let root = sets.first().ok_or(Error::EmptyGraph)?;
    build_term(g, root, &sets)
}

fn build_term(g: &Digraph, set: &VertexSet, family: &[&VertexSet]) -> Result<Term> {
    if set.len() == 1 {
        return Ok(Term::Leaf(set.min().expect("nonempty")));
    }
    // family is sorted by decreasing size, so the first strict subsets not
    // inside an already chosen child are the maximal ones.
    let mut children: Vec<&VertexSet> = Vec::new();
    for &candidate in family {
        if candidate.len() < set.len()
            && candidate.is_subset(set)
            && !children.iter().any(|c| candidate.is_subset(c))
        {
            children.push(candidate);
        }
    }
    children.sort_by_key(|c| VertexSet::min(c));
    let local = g.induced_subgraph(set);
    let blocks = children
        .iter()
        .map(|c| {
            c.iter()
                .map(|v| set.as_slice().binary_search(&v).unwrap())
                .collect()
        })
        .collect();
    let partition = Partition::new(set.len(), blocks)
        .map_err(|e| Error::Invariant(format!("strong children do not partition a node: {e}")))?;
    let quotient = local.contract(&partition);
    let kind = classify_quotient(&quotient);
    let order: Vec<usize> = if kind == ModuleKind::Ordered {
        unique_total_order(&quotient)?
    } else {
        (0..children.len()).collect()
    };
    let terms = order
        .into_iter()
        .map(|i| build_term(g, children[i], family))
        .collect::<Result<Vec<_>>>()?;
    Ok(Term::Node(kind, terms))
}

/// Decomposition of an arbitrary digraph taken as is (no closure semantics).
pub fn decompose_general(g: &Digraph) -> Result<MDTree> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(MDTree::from_term(assemble(g, &strong_modules(g))?))
}

/// Decomposition of an undirected graph; never yields ordered nodes.
pub fn decompose_undirected(ug: &Digraph) -> Result<MDTree> {
    if !ug.is_undirected() {
        return Err(Error::NotUndirected);
    }
    decompose_general(ug)
}

/// Decomposition of a transitive DAG, read off its undirected closure by
/// relabelling series nodes as ordered and sequencing their children.
pub fn decompose_transitive_dag(g: &Digraph) -> Result<MDTree> {
    if !g.is_acyclic() {
        return Err(Error::CyclicInput);
    }
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let undirected = decompose_undirected(&g.undirected_closure())?;
    let term = sequence_ordered(g, &undirected, undirected.root())?;
    Ok(MDTree::from_term(term))
}

fn sequence_ordered(g: &Digraph, t: &MDTree, i: crate::mdtree::NodeIndex) -> Result<Term> {
    let Some(kind) = t.module_kind(i) else {
        return Ok(Term::Leaf(t.vertices(i).min().expect("leaf")));
    };
    let children = t.children(i);
    let order: Vec<usize> = if kind == ModuleKind::Series {
        unique_total_order(&t.child_quotient(g, i))?
    } else {
        (0..children.len()).collect()
    };
    let kind = match kind {
        ModuleKind::Series => ModuleKind::Ordered,
        other => other,
    };
    let terms = order
        .into_iter()
        .map(|j| sequence_ordered(g, t, children[j]))
        .collect::<Result<Vec<_>>>()?;
    Ok(Term::Node(kind, terms))
}

/// Leaf replacement for a contracted strongly connected component.
pub(crate) fn component_term(block: &VertexSet) -> Term {
    if block.len() == 1 {
        Term::Leaf(block.min().expect("nonempty"))
    } else {
        Term::Node(ModuleKind::Series, block.iter().map(Term::Leaf).collect())
    }
}

/// Modular decomposition of the transitive closure of `g`.
///
/// Strongly connected components are contracted, the condensation's closure
/// is decomposed as a transitive DAG, and each component is expanded back as
/// a series node.
pub fn decompose_digraph(g: &Digraph) -> Result<MDTree> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let (dag, partition) = g.scc_contract();
    let tree = decompose_transitive_dag(&dag.transitive_closure())?;
    // components only ever land under ordered, parallel or prime parents
    debug_assert!(tree
        .internal_nodes()
        .all(|i| tree.module_kind(i) != Some(ModuleKind::Series)));
    let term = tree
        .to_term()
        .substitute(&mut |b| component_term(&partition.blocks()[b]));
    Ok(MDTree::from_term(term.prune()))
}
