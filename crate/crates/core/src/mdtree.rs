//! Modular decomposition trees.
//!
//! [`Term`] is the recursive form used while building and rewriting trees
//! (reduction fragments, grafting, pruning). [`MDTree`] is the canonical
//! arena form handed to callers: unordered children are sorted by their
//! smallest vertex, ordered children keep their sequence, and nodes are
//! numbered in preorder. Two trees describing the same decomposition are
//! therefore equal as values and serialize to identical bytes.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use crate::algo::topological_order;
use crate::error::{Error, Result};
use crate::graph::{Digraph, Labels, Partition, VertexId, VertexSet};

/// Type of an internal decomposition node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModuleKind {
    Prime,
    /// Child quotient is a complete digraph.
    Series,
    /// Child quotient has no arcs.
    Parallel,
    /// Child quotient is a strict total order; children are kept in that order.
    Ordered,
}

impl ModuleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModuleKind::Prime => "prime",
            ModuleKind::Series => "series",
            ModuleKind::Parallel => "parallel",
            ModuleKind::Ordered => "ordered",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "prime" => ModuleKind::Prime,
            "series" => ModuleKind::Series,
            "parallel" => ModuleKind::Parallel,
            "ordered" => ModuleKind::Ordered,
            _ => return None,
        })
    }
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies a quotient graph with at least two vertices.
pub fn classify_quotient(q: &Digraph) -> ModuleKind {
    let k = q.n();
    let arcs = q.edge_count();
    if arcs == 0 {
        ModuleKind::Parallel
    } else if arcs == k * (k - 1) {
        ModuleKind::Series
    } else if arcs * 2 == k * (k - 1) && q.is_oriented() && q.is_acyclic() {
        ModuleKind::Ordered
    } else {
        ModuleKind::Prime
    }
}

/// Recursive decomposition tree, possibly unreduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Leaf(VertexId),
    Node(ModuleKind, Vec<Term>),
}

impl Term {
    pub fn node(kind: ModuleKind, children: Vec<Term>) -> Term {
        Term::Node(kind, children)
    }

    pub fn min_vertex(&self) -> VertexId {
        match self {
            Term::Leaf(v) => *v,
            Term::Node(_, children) => children
                .iter()
                .map(Term::min_vertex)
                .min()
                .unwrap_or(usize::MAX),
        }
    }

    pub fn vertices(&self) -> VertexSet {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        VertexSet::new(out)
    }

    fn collect_leaves(&self, out: &mut Vec<VertexId>) {
        match self {
            Term::Leaf(v) => out.push(*v),
            Term::Node(_, children) => children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Every node's vertex set, leaves included.
    pub fn module_sets(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        self.collect_sets(&mut out);
        out
    }

    fn collect_sets(&self, out: &mut Vec<VertexSet>) -> VertexSet {
        let set = match self {
            Term::Leaf(v) => VertexSet::singleton(*v),
            Term::Node(_, children) => {
                let mut all = Vec::new();
                for c in children {
                    all.extend(c.collect_sets(out).into_vec());
                }
                VertexSet::new(all)
            }
        };
        out.push(set.clone());
        set
    }

    /// Sorts the children of unordered nodes by smallest vertex.
    pub fn canonicalize(self) -> Term {
        match self {
            Term::Leaf(v) => Term::Leaf(v),
            Term::Node(kind, children) => {
                let mut children: Vec<Term> =
                    children.into_iter().map(Term::canonicalize).collect();
                if kind != ModuleKind::Ordered {
                    children.sort_by_key(Term::min_vertex);
                }
                Term::Node(kind, children)
            }
        }
    }

    /// Splices out internal nodes whose parent has the same degenerate kind,
    /// and collapses single-child nodes. Ordered children keep their position
    /// in the parent sequence.
    pub fn prune(self) -> Term {
        match self {
            Term::Leaf(v) => Term::Leaf(v),
            Term::Node(kind, children) => {
                let mut out = Vec::with_capacity(children.len());
                for child in children {
                    match child.prune() {
                        Term::Node(k, grand) if k == kind && kind != ModuleKind::Prime => {
                            out.extend(grand)
                        }
                        other => out.push(other),
                    }
                }
                if out.len() == 1 {
                    out.pop().expect("one child")
                } else {
                    Term::Node(kind, out)
                }
            }
        }
    }

    /// Replaces every leaf `v` by `f(v)`.
    pub fn substitute<F: FnMut(VertexId) -> Term>(self, f: &mut F) -> Term {
        match self {
            Term::Leaf(v) => f(v),
            Term::Node(kind, children) => Term::Node(
                kind,
                children.into_iter().map(|c| c.substitute(f)).collect(),
            ),
        }
    }

    pub fn map_kinds<F: FnMut(ModuleKind) -> ModuleKind + Copy>(self, f: F) -> Term {
        match self {
            Term::Leaf(v) => Term::Leaf(v),
            Term::Node(kind, children) => {
                let mut g = f;
                Term::Node(
                    g(kind),
                    children.into_iter().map(|c| c.map_kinds(f)).collect(),
                )
            }
        }
    }

    /// Compact one-line rendering, e.g. `prime(ordered(A < D < G), H)`.
    pub fn render(&self, labels: Option<&Labels>) -> String {
        let mut out = String::new();
        self.render_into(labels, &mut out);
        out
    }

    fn render_into(&self, labels: Option<&Labels>, out: &mut String) {
        match self {
            Term::Leaf(v) => out.push_str(&vertex_name(labels, *v)),
            Term::Node(kind, children) => {
                out.push_str(kind.as_str());
                out.push('(');
                let sep = if *kind == ModuleKind::Ordered {
                    " < "
                } else {
                    ", "
                };
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        out.push_str(sep);
                    }
                    c.render_into(labels, out);
                }
                out.push(')');
            }
        }
    }

    /// Line-per-node record format; see [`MDTree::to_structured`].
    pub fn to_structured(&self, labels: Option<&Labels>) -> String {
        let mut records = Vec::new();
        self.structured_records(labels, &mut records);
        let mut out = format!("mdtree {}\n", records.len());
        for r in records {
            out.push_str(&r);
            out.push('\n');
        }
        out
    }

    fn structured_records(&self, labels: Option<&Labels>, records: &mut Vec<String>) -> usize {
        let id = records.len();
        records.push(String::new());
        records[id] = match self {
            Term::Leaf(v) => format!("{id} leaf {}", vertex_name(labels, *v)),
            Term::Node(kind, children) => {
                let ids: Vec<String> = children
                    .iter()
                    .map(|c| c.structured_records(labels, records).to_string())
                    .collect();
                format!("{id} {kind} {}", ids.join(" "))
            }
        };
        id
    }

    /// Parses the record format written by [`Term::to_structured`].
    pub fn from_structured(text: &str, labels: &Labels) -> Result<Term, String> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or("missing header")?;
        let count: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["mdtree", count] => count.parse().map_err(|_| "bad node count")?,
            _ => return Err(format!("bad header {header:?}")),
        };
        let mut records: Vec<Option<(String, Vec<String>)>> = vec![None; count];
        for line in lines {
            let mut tokens = line.split_whitespace();
            let id: usize = tokens
                .next()
                .and_then(|t| t.parse().ok())
                .filter(|&id| id < count)
                .ok_or_else(|| format!("bad node id in {line:?}"))?;
            let kind = tokens
                .next()
                .ok_or_else(|| format!("missing kind in {line:?}"))?;
            if records[id].is_some() {
                return Err(format!("node {id} defined twice"));
            }
            records[id] = Some((kind.to_owned(), tokens.map(str::to_owned).collect()));
        }
        fn build(
            id: usize,
            records: &[Option<(String, Vec<String>)>],
            labels: &Labels,
            depth: usize,
        ) -> Result<Term, String> {
            if depth > records.len() {
                return Err("node references form a cycle".into());
            }
            let (kind, args) = records[id]
                .as_ref()
                .ok_or_else(|| format!("node {id} missing"))?;
            if kind == "leaf" {
                let [name] = &args[..] else {
                    return Err(format!("leaf {id} needs exactly one label"));
                };
                let v = labels
                    .id(name)
                    .ok_or_else(|| format!("unknown label {name:?}"))?;
                return Ok(Term::Leaf(v));
            }
            let kind = ModuleKind::parse(kind).ok_or_else(|| format!("unknown kind {kind:?}"))?;
            let children = args
                .iter()
                .map(|a| {
                    let c: usize = a.parse().map_err(|_| format!("bad child id {a:?}"))?;
                    if c >= records.len() {
                        return Err(format!("child id {c} out of range"));
                    }
                    build(c, records, labels, depth + 1)
                })
                .collect::<Result<Vec<_>, String>>()?;
            if children.len() < 2 {
                return Err(format!("node {id} has fewer than two children"));
            }
            Ok(Term::Node(kind, children))
        }
        if count == 0 {
            return Err("empty tree".into());
        }
        build(0, &records, labels, 0)
    }
}

pub(crate) fn vertex_name(labels: Option<&Labels>, v: VertexId) -> String {
    labels
        .and_then(|l| l.name(v))
        .map(str::to_owned)
        .unwrap_or_else(|| v.to_string())
}

/// Index of a node in an [`MDTree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeIndex(usize);

impl NodeIndex {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf(VertexId),
    Module(ModuleKind),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MDNode {
    kind: NodeKind,
    children: Vec<NodeIndex>,
    parent: Option<NodeIndex>,
    vertices: VertexSet,
}

/// Canonical modular decomposition tree. The root is node 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MDTree {
    nodes: Vec<MDNode>,
}

impl MDTree {
    /// Builds the canonical arena form of `term` without pruning it.
    pub fn from_term(term: Term) -> MDTree {
        let term = term.canonicalize();
        let mut nodes = Vec::new();
        Self::push(&term, None, &mut nodes);
        MDTree { nodes }
    }

    fn push(term: &Term, parent: Option<NodeIndex>, nodes: &mut Vec<MDNode>) -> NodeIndex {
        let idx = NodeIndex(nodes.len());
        let kind = match term {
            Term::Leaf(v) => NodeKind::Leaf(*v),
            Term::Node(k, _) => NodeKind::Module(*k),
        };
        nodes.push(MDNode {
            kind,
            children: Vec::new(),
            parent,
            vertices: VertexSet::default(),
        });
        let vertices = match term {
            Term::Leaf(v) => VertexSet::singleton(*v),
            Term::Node(_, children) => {
                let mut all = Vec::new();
                for c in children {
                    let ci = Self::push(c, Some(idx), nodes);
                    nodes[idx.0].children.push(ci);
                    all.extend_from_slice(nodes[ci.0].vertices.as_slice());
                }
                VertexSet::new(all)
            }
        };
        nodes[idx.0].vertices = vertices;
        idx
    }

    pub fn to_term(&self) -> Term {
        self.term_at(self.root())
    }

    fn term_at(&self, i: NodeIndex) -> Term {
        match self.nodes[i.0].kind {
            NodeKind::Leaf(v) => Term::Leaf(v),
            NodeKind::Module(k) => Term::Node(
                k,
                self.nodes[i.0]
                    .children
                    .iter()
                    .map(|&c| self.term_at(c))
                    .collect(),
            ),
        }
    }

    pub fn root(&self) -> NodeIndex {
        NodeIndex(0)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeIndex> {
        (0..self.nodes.len()).map(NodeIndex)
    }

    pub fn kind(&self, i: NodeIndex) -> NodeKind {
        self.nodes[i.0].kind
    }

    /// `None` for leaves.
    pub fn module_kind(&self, i: NodeIndex) -> Option<ModuleKind> {
        match self.nodes[i.0].kind {
            NodeKind::Module(k) => Some(k),
            NodeKind::Leaf(_) => None,
        }
    }

    pub fn children(&self, i: NodeIndex) -> &[NodeIndex] {
        &self.nodes[i.0].children
    }

    pub fn parent(&self, i: NodeIndex) -> Option<NodeIndex> {
        self.nodes[i.0].parent
    }

    pub fn vertices(&self, i: NodeIndex) -> &VertexSet {
        &self.nodes[i.0].vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.nodes[0].vertices.len()
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = NodeIndex> + '_ {
        self.nodes().filter(|&i| self.module_kind(i).is_some())
    }

    /// Vertex sets of every node, leaves included.
    pub fn module_sets(&self) -> BTreeSet<VertexSet> {
        self.nodes.iter().map(|n| n.vertices.clone()).collect()
    }

    /// Reduced form: no degenerate node has a parent of the same kind.
    pub fn prune(&self) -> MDTree {
        MDTree::from_term(self.to_term().prune())
    }

    pub fn is_reduced(&self) -> bool {
        self.internal_nodes().all(|i| {
            self.children(i).len() >= 2
                && self.children(i).iter().all(|&c| match self.module_kind(c) {
                    Some(k) => k == ModuleKind::Prime || Some(k) != self.module_kind(i),
                    None => true,
                })
        })
    }

    /// Quotient of `g` restricted to node `i` by its children; vertex `j` of
    /// the result is child `j`. Leaves yield a single-vertex graph.
    pub fn child_quotient(&self, g: &Digraph, i: NodeIndex) -> Digraph {
        let set = self.vertices(i);
        let local = g.induced_subgraph(set);
        let children = self.children(i);
        if children.is_empty() {
            return Digraph::new(1);
        }
        let blocks = children
            .iter()
            .map(|&c| {
                self.vertices(c)
                    .iter()
                    .map(|v| {
                        set.as_slice()
                            .binary_search(&v)
                            .expect("child within parent")
                    })
                    .collect()
            })
            .collect();
        let p = Partition::new(set.len(), blocks).expect("children partition their parent");
        local.contract(&p)
    }

    pub fn render(&self, labels: Option<&Labels>) -> String {
        self.to_term().render(labels)
    }

    /// One record per node in preorder, after a `mdtree <count>` header:
    /// `<id> leaf <label>` or `<id> <kind> <child ids>`. Children of ordered
    /// nodes are listed in sequence order.
    pub fn to_structured(&self, labels: Option<&Labels>) -> String {
        self.to_term().to_structured(labels)
    }

    pub fn to_dot(&self, labels: Option<&Labels>) -> String {
        let mut out = String::from("digraph mdtree {\n");
        for i in self.nodes() {
            let label = match self.kind(i) {
                NodeKind::Leaf(v) => vertex_name(labels, v),
                NodeKind::Module(k) => k.to_string(),
            };
            let shape = if self.module_kind(i).is_some() {
                "box"
            } else {
                "ellipse"
            };
            let _ = writeln!(
                out,
                "  n{} [label=\"{}\", shape={shape}];",
                i.0,
                escape(&label)
            );
        }
        for i in self.nodes() {
            for &c in self.children(i) {
                let _ = writeln!(out, "  n{} -> n{};", i.0, c.0);
            }
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Topological order of a quotient that must be a strict total order.
pub(crate) fn unique_total_order(q: &Digraph) -> Result<Vec<VertexId>> {
    let order = topological_order(q)
        .ok_or_else(|| Error::Invariant("ordered quotient has a cycle".into()))?;
    let total = order.windows(2).all(|w| q.has_edge(w[0], w[1]));
    if !total || q.edge_count() * 2 != q.n() * q.n().saturating_sub(1) {
        return Err(Error::Invariant(
            "ordered quotient is not a total order".into(),
        ));
    }
    Ok(order)
}
