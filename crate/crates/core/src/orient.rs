//! Transitive orientation through the forcing relation.
//!
//! Two arcs of an undirected graph force each other when they share a tail
//! and their heads are non-adjacent, or share a head and their tails are
//! non-adjacent. The reflexive-transitive closure of forcing partitions the
//! arcs into implication classes; a graph is a comparability graph iff no
//! class contains an arc together with its inverse.
//!
//! Orientation works over the modular decomposition: parallel nodes carry no
//! edges, series nodes are oriented along their child order, and prime nodes
//! are fully determined by forcing once a single arc is fixed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::decompose::decompose_undirected;
use crate::error::{Error, Result};
use crate::graph::{Digraph, VertexId};
use crate::mdtree::{ModuleKind, NodeIndex};

/// A directed edge `(tail, head)`.
pub type Arc = (VertexId, VertexId);

/// Evidence that a graph has no transitive orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The implication class of `arc` also contains its inverse.
    SelfInverseClass { arc: Arc, class: Vec<Arc> },
    /// `a -> b` and `b -> c` are oriented but `a` and `c` are not adjacent.
    Intransitive {
        a: VertexId,
        b: VertexId,
        c: VertexId,
    },
}

impl Witness {
    /// Renders the witness with `name` supplying vertex labels.
    pub fn describe<F: Fn(VertexId) -> String>(&self, name: F) -> String {
        match self {
            Witness::SelfInverseClass { arc, class } => {
                let arcs: Vec<String> = class
                    .iter()
                    .map(|&(a, b)| format!("{}->{}", name(a), name(b)))
                    .collect();
                format!(
                    "implication class of {}->{} contains its inverse (odd forcing cycle): {}",
                    name(arc.0),
                    name(arc.1),
                    arcs.join(" ")
                )
            }
            Witness::Intransitive { a, b, c } => format!(
                "{}->{} and {}->{} are oriented but {} and {} are not adjacent",
                name(*a),
                name(*b),
                name(*b),
                name(*c),
                name(*a),
                name(*c)
            ),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe(|v| v.to_string()))
    }
}

/// True iff `e1` and `e2` directly force each other in `ug`.
pub fn gamma(ug: &Digraph, e1: Arc, e2: Arc) -> Result<bool> {
    for (a, b) in [e1, e2] {
        if !ug.has_edge(a, b) {
            return Err(Error::EdgeNotInGraph(a, b));
        }
    }
    let ((a, b), (c, d)) = (e1, e2);
    Ok((a == c && b != d && !ug.adjacent(b, d)) || (b == d && a != c && !ug.adjacent(a, c)))
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
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

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Partition of the arcs of an undirected graph into implication classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicationClasses {
    classes: Vec<Vec<Arc>>,
    class_of: HashMap<Arc, usize>,
}

impl ImplicationClasses {
    /// Classes ordered by their smallest arc; arcs within a class sorted.
    pub fn classes(&self) -> &[Vec<Arc>] {
        &self.classes
    }

    pub fn class_of(&self, arc: Arc) -> Option<usize> {
        self.class_of.get(&arc).copied()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn same_class(&self, e1: Arc, e2: Arc) -> bool {
        matches!((self.class_of(e1), self.class_of(e2)), (Some(a), Some(b)) if a == b)
    }

    /// Index of a class containing some arc and its inverse.
    pub fn self_inverse(&self) -> Option<usize> {
        self.classes.iter().position(|class| {
            class
                .iter()
                .any(|&(a, b)| self.class_of((b, a)) == self.class_of((a, b)))
        })
    }
}

/// Implication classes of an undirected graph.
pub fn implication_classes(ug: &Digraph) -> Result<ImplicationClasses> {
    if !ug.is_undirected() {
        return Err(Error::NotUndirected);
    }
    let arcs: Vec<Arc> = ug.edges().collect();
    let index: HashMap<Arc, usize> = arcs.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut sets = DisjointSets::new(arcs.len());
    for v in ug.vertices() {
        let nbrs = ug.successors(v);
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                if !ug.has_edge(x, y) {
                    sets.union(index[&(v, x)], index[&(v, y)]);
                    sets.union(index[&(x, v)], index[&(y, v)]);
                }
            }
        }
    }
    let mut grouped: BTreeMap<usize, Vec<Arc>> = BTreeMap::new();
    for (i, &arc) in arcs.iter().enumerate() {
        grouped.entry(sets.find(i)).or_default().push(arc);
    }
    // union-find roots are the smallest member index, and arcs are sorted, so
    // iterating by root orders classes by smallest arc.
    let classes: Vec<Vec<Arc>> = grouped.into_values().collect();
    let class_of = classes
        .iter()
        .enumerate()
        .flat_map(|(c, class)| class.iter().map(move |&arc| (arc, c)))
        .collect();
    Ok(ImplicationClasses { classes, class_of })
}

/// An orientation of an undirected graph: one arc per undirected edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrientation {
    n: usize,
    arcs: Vec<Arc>,
}

impl EdgeOrientation {
    pub fn new(n: usize, mut arcs: Vec<Arc>) -> Self {
        arcs.sort_unstable();
        arcs.dedup();
        EdgeOrientation { n, arcs }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, arc: Arc) -> bool {
        self.arcs.binary_search(&arc).is_ok()
    }

    pub fn inverse(&self) -> EdgeOrientation {
        EdgeOrientation::new(self.n, self.arcs.iter().map(|&(a, b)| (b, a)).collect())
    }

    /// Keeps the arcs whose underlying edge lies in `ug`.
    pub fn restrict_to(&self, ug: &Digraph) -> EdgeOrientation {
        EdgeOrientation::new(
            self.n,
            self.arcs
                .iter()
                .copied()
                .filter(|&(a, b)| ug.has_edge(a, b))
                .collect(),
        )
    }

    pub fn to_digraph(&self) -> Digraph {
        Digraph::from_arcs_lossy(self.n, self.arcs.iter().copied())
    }
}

/// Checks that `o` orients every edge of `ug` exactly once and transitively.
pub fn verify_transitive_orientation(ug: &Digraph, o: &EdgeOrientation) -> Result<(), String> {
    let d = o.to_digraph();
    if d.n() != ug.n() {
        return Err("orientation is over a different vertex set".into());
    }
    for (a, b) in ug.edges() {
        match (d.has_edge(a, b), d.has_edge(b, a)) {
            (true, true) => return Err(format!("edge {{{a}, {b}}} oriented both ways")),
            (false, false) => return Err(format!("edge {{{a}, {b}}} not oriented")),
            _ => {}
        }
    }
    if let Some((a, b)) = d.edges().find(|&(a, b)| !ug.has_edge(a, b)) {
        return Err(format!("arc ({a}, {b}) is not an edge of the graph"));
    }
    if let Some((a, b, c)) = intransitive_triple(&d) {
        return Err(format!(
            "({a}, {b}) and ({b}, {c}) oriented without ({a}, {c})"
        ));
    }
    Ok(())
}

fn intransitive_triple(d: &Digraph) -> Option<(VertexId, VertexId, VertexId)> {
    d.edges().find_map(|(a, b)| {
        d.successors(b)
            .iter()
            .find(|&&c| c != a && !d.has_edge(a, c))
            .map(|&c| (a, b, c))
    })
}

/// Orients the arcs of an undirected quotient graph by forcing, seeding the
/// smallest unoriented arc each round. Returns the failing seed if a class is
/// self-inverse.
fn orient_by_forcing(q: &Digraph) -> Result<Vec<Arc>, Arc> {
    let classes = implication_classes(q).expect("quotients of undirected graphs are undirected");
    let mut decided: Vec<Option<bool>> = vec![None; classes.len()];
    let mut arcs = Vec::new();
    for seed in q.edges() {
        let c = classes.class_of(seed).expect("arc has a class");
        if decided[c].is_some() {
            continue;
        }
        let inverse = classes
            .class_of((seed.1, seed.0))
            .expect("inverse has a class");
        if inverse == c {
            return Err(seed);
        }
        decided[c] = Some(true);
        decided[inverse] = Some(false);
        arcs.extend_from_slice(&classes.classes()[c]);
    }
    Ok(arcs)
}

/// A transitive orientation of `ug`, or a witness that none exists.
pub fn transitive_orientation(ug: &Digraph) -> Result<EdgeOrientation> {
    if !ug.is_undirected() {
        return Err(Error::NotUndirected);
    }
    let n = ug.n();
    if ug.edge_count() == 0 {
        return Ok(EdgeOrientation::new(n, Vec::new()));
    }
    let tree = decompose_undirected(ug)?;
    let mut arcs = Vec::with_capacity(ug.edge_count() / 2);
    for node in tree.internal_nodes() {
        let children: Vec<NodeIndex> = tree.children(node).to_vec();
        let quotient_arcs: Vec<Arc> = match tree.module_kind(node).expect("internal") {
            ModuleKind::Parallel => continue,
            ModuleKind::Series | ModuleKind::Ordered => (0..children.len())
                .flat_map(|i| (i + 1..children.len()).map(move |j| (i, j)))
                .collect(),
            ModuleKind::Prime => {
                let q = tree.child_quotient(ug, node);
                match orient_by_forcing(&q) {
                    Ok(arcs) => arcs,
                    Err((x, y)) => {
                        let rep = |i: usize| tree.vertices(children[i]).min().expect("nonempty");
                        let arc = (rep(x), rep(y));
                        let classes = implication_classes(ug)?;
                        let class =
                            classes.classes()[classes.class_of(arc).expect("arc of ug")].clone();
                        return Err(Error::NotComparability(Witness::SelfInverseClass {
                            arc,
                            class,
                        }));
                    }
                }
            }
        };
        for (i, j) in quotient_arcs {
            let (from, to) = (tree.vertices(children[i]), tree.vertices(children[j]));
            for a in from.iter() {
                for b in to.iter() {
                    if ug.has_edge(a, b) {
                        arcs.push((a, b));
                    }
                }
            }
        }
    }
    let orientation = EdgeOrientation::new(n, arcs);
    if let Some((a, b, c)) = intransitive_triple(&orientation.to_digraph()) {
        return Err(Error::NotComparability(Witness::Intransitive { a, b, c }));
    }
    verify_transitive_orientation(ug, &orientation).map_err(Error::Invariant)?;
    Ok(orientation)
}

/// How an orientation of the closure's complement was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrientationSource {
    /// Restricted from a transitive orientation of the input's complement.
    Lifted,
    /// Computed on the closure's complement itself.
    Direct,
}

impl fmt::Display for OrientationSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrientationSource::Lifted => "lifted",
            OrientationSource::Direct => "direct",
        })
    }
}

/// Which graph [`orient_complement_with`] tries first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ComplementStrategy {
    /// Orient the input's undirected complement and restrict; fall back to
    /// the closure's complement if that graph is not a comparability graph.
    #[default]
    LiftFirst,
    /// Orient the closure's undirected complement directly.
    Direct,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementOrientation {
    pub orientation: EdgeOrientation,
    pub source: OrientationSource,
}

/// Transitive orientation of the undirected complement of the transitive
/// closure of `g`.
pub fn orient_complement(g: &Digraph) -> Result<ComplementOrientation> {
    orient_complement_with(g, ComplementStrategy::LiftFirst)
}

pub fn orient_complement_with(
    g: &Digraph,
    strategy: ComplementStrategy,
) -> Result<ComplementOrientation> {
    let target = g.transitive_closure().undirected_complement();
    if strategy == ComplementStrategy::LiftFirst {
        match transitive_orientation(&g.undirected_complement()) {
            Ok(full) => {
                let orientation = full.restrict_to(&target);
                verify_transitive_orientation(&target, &orientation).map_err(|e| {
                    Error::Invariant(format!("lifted orientation is not transitive: {e}"))
                })?;
                return Ok(ComplementOrientation {
                    orientation,
                    source: OrientationSource::Lifted,
                });
            }
            Err(Error::NotComparability(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(ComplementOrientation {
        orientation: transitive_orientation(&target)?,
        source: OrientationSource::Direct,
    })
}
