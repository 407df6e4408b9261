//! Test-side oracles and generators. Nothing here calls into the algorithms
//! under test except for graph construction.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use transmod::{parse_edge_list, Digraph, VertexId, VertexSet};

pub const G1: &str = "A\nB\nC\nD\nE\nF\nG\nH\nA D\nB C\nC B\nD G\nE B\nE H\nF C\nF H\nG H\n";
pub const G2: &str = "A\nB\nC\nD\nE\nF\nA B\nA C\nA D\nB E\nC E\nD F\n";
pub const G3: &str = "A\nB\nC\nD\nE\nA B\nA C\nB C\nB D\nB E\n";
pub const G4: &str = "A\nB\nC\nA B\nA C\nB C\nC B\n";
pub const G5: &str = "A\nB\nC\nD\nE\nA D\nA E\nB C\nB E\nD C\n";

pub fn load(text: &str) -> Digraph {
    parse_edge_list(text).expect("fixture parses")
}

pub fn id(g: &Digraph, label: &str) -> VertexId {
    g.vertex(label).expect("known label")
}

pub fn set(g: &Digraph, labels: &str) -> VertexSet {
    labels.chars().map(|c| id(g, &c.to_string())).collect()
}

pub fn arcs(g: &Digraph, spec: &str) -> BTreeSet<(VertexId, VertexId)> {
    spec.split_whitespace()
        .map(|pair| {
            let (a, b) = pair.split_once('>').expect("arc written as a>b");
            (id(g, a), id(g, b))
        })
        .collect()
}

pub fn edge_set(g: &Digraph) -> BTreeSet<(VertexId, VertexId)> {
    g.edges().collect()
}

/// Iterative DFS from `s`; `s` itself only if it lies on a cycle.
pub fn dfs_reach(g: &Digraph, s: VertexId) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    let mut stack: Vec<VertexId> = g.successors(s).to_vec();
    while let Some(v) = stack.pop() {
        if !seen[v] {
            seen[v] = true;
            stack.extend_from_slice(g.successors(v));
        }
    }
    seen
}

/// Closure by the Warshall triple loop over a boolean matrix.
#[allow(clippy::needless_range_loop)]
pub fn brute_closure(g: &Digraph) -> BTreeSet<(VertexId, VertexId)> {
    let n = g.n();
    let mut m = vec![vec![false; n]; n];
    for (a, b) in g.edges() {
        m[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                for j in 0..n {
                    if m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
    }
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && m[i][j])
        .collect()
}

pub fn triple_transitive(n: usize, arcs: &BTreeSet<(VertexId, VertexId)>) -> bool {
    (0..n).all(|a| {
        (0..n).all(|b| {
            !arcs.contains(&(a, b))
                || (0..n).all(|c| a == c || !arcs.contains(&(b, c)) || arcs.contains(&(a, c)))
        })
    })
}

pub fn has_cycle(g: &Digraph) -> bool {
    g.vertices().any(|v| dfs_reach(g, v)[v])
}

/// Module test written from the definition: every outside vertex relates
/// to all of `m` or to none of it, in each direction.
pub fn naive_is_module(g: &Digraph, m: &[VertexId]) -> bool {
    g.vertices().filter(|x| !m.contains(x)).all(|x| {
        let outs: BTreeSet<bool> = m.iter().map(|&a| g.has_edge(x, a)).collect();
        let ins: BTreeSet<bool> = m.iter().map(|&a| g.has_edge(a, x)).collect();
        outs.len() <= 1 && ins.len() <= 1
    })
}

pub fn naive_strong_modules(g: &Digraph) -> BTreeSet<VertexSet> {
    let n = g.n();
    let modules: Vec<Vec<VertexId>> = (1u32..(1 << n))
        .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>())
        .filter(|m| naive_is_module(g, m))
        .collect();
    let overlap = |a: &[VertexId], b: &[VertexId]| {
        let inter = a.iter().filter(|v| b.contains(v)).count();
        inter > 0 && inter < a.len() && inter < b.len()
    };
    modules
        .iter()
        .filter(|m| !modules.iter().any(|o| overlap(m, o)))
        .map(|m| VertexSet::new(m.clone()))
        .collect()
}

pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Digraph {
    let arcs: Vec<_> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b)
        .filter(|_| rng.gen_bool(p))
        .collect();
    Digraph::from_edges(n, arcs).unwrap()
}

/// Random DAG whose topological order is a random permutation.
pub fn random_dag<R: Rng>(rng: &mut R, n: usize, p: f64) -> Digraph {
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(rng);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                arcs.push((perm[i], perm[j]));
            }
        }
    }
    Digraph::from_edges(n, arcs).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Compose {
    Parallel,
    Ordered,
    Series,
}

/// Arcs of a graph built by recursively composing `vertices` with random
/// parallel, ordered and (if allowed) series operations. Series joins add
/// arcs both ways, so they surface as strongly connected components.
pub fn composition_arcs<R: Rng>(
    rng: &mut R,
    vertices: &[VertexId],
    allow_series: bool,
    out: &mut Vec<(VertexId, VertexId)>,
) {
    if vertices.len() < 2 {
        return;
    }
    let cut = rng.gen_range(1..vertices.len());
    let (left, right) = vertices.split_at(cut);
    composition_arcs(rng, left, allow_series, out);
    composition_arcs(rng, right, allow_series, out);
    let kinds: &[Compose] = if allow_series {
        &[Compose::Parallel, Compose::Ordered, Compose::Series]
    } else {
        &[Compose::Parallel, Compose::Ordered]
    };
    match *kinds.choose(rng).unwrap() {
        Compose::Parallel => {}
        Compose::Ordered => {
            for &a in left {
                for &b in right {
                    out.push((a, b));
                }
            }
        }
        Compose::Series => {
            for &a in left {
                for &b in right {
                    out.push((a, b));
                    out.push((b, a));
                }
            }
        }
    }
}

/// Random prime-free order: a transitively closed composition of parallel
/// and ordered operations over shuffled vertex ids.
pub fn random_prime_free<R: Rng>(rng: &mut R, n: usize, allow_series: bool) -> Digraph {
    let mut vertices: Vec<VertexId> = (0..n).collect();
    vertices.shuffle(rng);
    let mut arcs = Vec::new();
    composition_arcs(rng, &vertices, allow_series, &mut arcs);
    Digraph::from_edges(n, arcs).unwrap()
}

/// Transitive reduction from the definition: drop `a -> c` whenever some
/// `b` has `a -> b -> c` in the closure.
pub fn naive_reduction(g: &Digraph) -> Digraph {
    let closure = brute_closure(g);
    let n = g.n();
    let kept: Vec<_> = closure
        .iter()
        .copied()
        .filter(|&(a, c)| !(0..n).any(|b| closure.contains(&(a, b)) && closure.contains(&(b, c))))
        .collect();
    Digraph::from_edges(n, kept).unwrap()
}

/// Every transitive orientation of `ug`, by exhaustive search over the
/// direction of each undirected edge.
pub fn all_transitive_orientations(ug: &Digraph) -> Vec<BTreeSet<(VertexId, VertexId)>> {
    let edges: Vec<(VertexId, VertexId)> = ug.edges().filter(|&(a, b)| a < b).collect();
    assert!(edges.len() <= 20, "exhaustive search is for small graphs");
    (0u32..(1 << edges.len()))
        .map(|mask| {
            edges
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| if mask >> i & 1 == 1 { (b, a) } else { (a, b) })
                .collect::<BTreeSet<_>>()
        })
        .filter(|o| triple_transitive(ug.n(), o))
        .collect()
}
