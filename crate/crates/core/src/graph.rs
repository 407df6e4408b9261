//! Simple directed graphs over dense vertex ids.
//!
//! Undirected graphs are represented as symmetric digraphs: every undirected
//! edge `{a, b}` is stored as the two arcs `a -> b` and `b -> a`.

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Dense vertex index in `[0, n)`.
pub type VertexId = usize;

/// A sorted, duplicate-free set of vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<VertexId>);

impl VertexSet {
    pub fn new(mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        VertexSet(vertices)
    }

    pub fn singleton(v: VertexId) -> Self {
        VertexSet(vec![v])
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn min(&self) -> Option<VertexId> {
        self.0.first().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.len() <= other.len() && self.iter().all(|v| other.contains(v))
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.iter().any(|v| other.contains(v))
    }

    /// Intersecting without either containing the other.
    pub fn overlaps(&self, other: &VertexSet) -> bool {
        self.intersects(other) && !self.is_subset(other) && !other.is_subset(self)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.iter().chain(other.iter()).collect())
    }

    pub fn into_vec(self) -> Vec<VertexId> {
        self.0
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

impl From<Vec<VertexId>> for VertexSet {
    fn from(v: Vec<VertexId>) -> Self {
        VertexSet::new(v)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Bijection between vertex ids and external string labels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Labels {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
}

impl Labels {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels = Labels::new();
        for name in names {
            let name = name.into();
            if labels.index.contains_key(&name) {
                return Err(Error::DuplicateLabel(name));
            }
            labels.get_or_insert(&name);
        }
        Ok(labels)
    }

    /// Returns the id of `name`, assigning the next free id on first sight.
    pub fn get_or_insert(&mut self, name: &str) -> VertexId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len();
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), id);
        id
    }

    pub fn id(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, v: VertexId) -> Option<&str> {
        self.names.get(v).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Partition of the vertex set into disjoint nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<VertexSet>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<VertexSet>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; n];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {i} is empty")));
            }
            for v in block.iter() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if block_of[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} lies in more than one block"
                    )));
                }
                block_of[v] = i;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "vertex {v} is not covered"
            )));
        }
        Ok(Partition { blocks, block_of })
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            blocks: (0..n).map(VertexSet::singleton).collect(),
            block_of: (0..n).collect(),
        }
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn block_of(&self, v: VertexId) -> usize {
        self.block_of[v]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// A simple digraph: no self-loops, no parallel arcs.
///
/// Successor and predecessor lists are kept sorted so that `has_edge` is a
/// binary search and equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    succ: Vec<Vec<VertexId>>,
    pred: Vec<Vec<VertexId>>,
    labels: Option<Labels>,
}

impl Digraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Digraph {
            succ: vec![Vec::new(); n],
            pred: vec![Vec::new(); n],
            labels: None,
        }
    }

    /// Builds a graph from arcs, deduplicating repeats. Self-loops are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut arcs = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            arcs.push((a, b));
        }
        Ok(Self::from_arcs_lossy(n, arcs))
    }

    /// Builds a graph from arcs, silently dropping self-loops and repeats.
    /// Callers guarantee ids are in range.
    pub(crate) fn from_arcs_lossy<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for (a, b) in edges {
            if a != b {
                succ[a].push(b);
                pred[b].push(a);
            }
        }
        for list in succ.iter_mut().chain(pred.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        Digraph {
            succ,
            pred,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Labels) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::LabelCountMismatch {
                labels: labels.len(),
                n: self.n(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Same edges, labels from `other` (which must have the same vertex count).
    pub(crate) fn relabelled_like(mut self, other: &Digraph) -> Self {
        debug_assert_eq!(self.n(), other.n());
        self.labels = other.labels.clone();
        self
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    /// Label of `v`, or its decimal id for unlabelled graphs.
    pub fn label(&self, v: VertexId) -> Cow<'_, str> {
        match self.labels.as_ref().and_then(|l| l.name(v)) {
            Some(name) => Cow::Borrowed(name),
            None => Cow::Owned(v.to_string()),
        }
    }

    /// Resolves a label (or, for unlabelled graphs, a decimal id).
    pub fn vertex(&self, label: &str) -> Result<VertexId> {
        let found = match &self.labels {
            Some(labels) => labels.id(label),
            None => label.parse::<VertexId>().ok().filter(|&v| v < self.n()),
        };
        found.ok_or_else(|| Error::UnknownVertex(label.to_owned()))
    }

    pub fn n(&self) -> usize {
        self.succ.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn successors(&self, v: VertexId) -> &[VertexId] {
        &self.succ[v]
    }

    pub fn predecessors(&self, v: VertexId) -> &[VertexId] {
        &self.pred[v]
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        a < self.n() && self.succ[a].binary_search(&b).is_ok()
    }

    /// Either `a -> b` or `b -> a`.
    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.has_edge(a, b) || self.has_edge(b, a)
    }

    /// All arcs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, succ)| succ.iter().map(move |&b| (a, b)))
    }

    /// The graph with every arc reversed.
    pub fn inverse(&self) -> Digraph {
        Digraph {
            succ: self.pred.clone(),
            pred: self.succ.clone(),
            labels: self.labels.clone(),
        }
    }

    /// `E ∪ E⁻¹`.
    pub fn undirected_closure(&self) -> Digraph {
        let arcs = self.edges().flat_map(|(a, b)| [(a, b), (b, a)]);
        Digraph::from_arcs_lossy(self.n(), arcs).relabelled_like(self)
    }

    /// All ordered pairs of distinct vertices that are not arcs.
    pub fn complement(&self) -> Digraph {
        let n = self.n();
        let arcs = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && !self.has_edge(a, b));
        Digraph::from_arcs_lossy(n, arcs).relabelled_like(self)
    }

    /// Complement of the undirected closure; always undirected.
    pub fn undirected_complement(&self) -> Digraph {
        self.undirected_closure().complement()
    }

    pub fn is_undirected(&self) -> bool {
        self.edges().all(|(a, b)| self.has_edge(b, a))
    }

    /// `E ∩ E⁻¹ = ∅`.
    pub fn is_oriented(&self) -> bool {
        self.edges().all(|(a, b)| !self.has_edge(b, a))
    }

    pub fn is_transitive(&self) -> bool {
        self.edges()
            .all(|(a, b)| self.succ[b].iter().all(|&c| c == a || self.has_edge(a, c)))
    }

    pub fn is_acyclic(&self) -> bool {
        crate::algo::topological_order(self).is_some()
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is the
    /// `i`-th smallest member of the set.
    pub fn induced_subgraph(&self, vertices: &VertexSet) -> Digraph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let arcs = vertices.iter().flat_map(|a| {
            let local = &local;
            self.succ[a]
                .iter()
                .filter(move |&&b| local[b] != usize::MAX)
                .map(move |&b| (local[a], local[b]))
        });
        let mut sub = Digraph::from_arcs_lossy(vertices.len(), arcs.collect::<Vec<_>>());
        if let Some(labels) = &self.labels {
            let names = vertices.iter().map(|v| labels.name(v).unwrap_or_default());
            sub.labels = Labels::from_names(names.map(str::to_owned)).ok();
        }
        sub
    }

    /// Merges each block into one vertex. Arcs inside a block vanish and
    /// parallel arcs between blocks collapse to one. No module check is made.
    pub fn contract(&self, partition: &Partition) -> Digraph {
        let arcs = self
            .edges()
            .map(|(a, b)| (partition.block_of(a), partition.block_of(b)));
        Digraph::from_arcs_lossy(partition.len(), arcs.collect::<Vec<_>>())
    }
}
