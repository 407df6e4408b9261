//! Exhaustive module enumeration for small graphs.
//!
//! Everything here is deliberately naive: subsets are enumerated as bitmasks
//! and overlap is tested pairwise. These functions are the ground truth the
//! polynomial-time decomposition is checked against.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Digraph, Partition, VertexSet};
use crate::mdtree::{classify_quotient, ModuleKind};

/// Largest graph the oracle accepts unless configured otherwise.
pub const DEFAULT_ORACLE_BOUND: usize = 14;

/// Hard ceiling imposed by the bitmask representation.
const MAX_ORACLE_BOUND: usize = 30;

/// True iff no vertex outside `m` distinguishes two members of `m`.
pub fn is_module(g: &Digraph, m: &VertexSet) -> bool {
    if m.is_empty() || m.iter().any(|v| v >= g.n()) {
        return false;
    }
    let first = m.min().expect("nonempty");
    g.vertices().filter(|&x| !m.contains(x)).all(|x| {
        let out = g.has_edge(x, first);
        let inc = g.has_edge(first, x);
        m.iter()
            .all(|a| g.has_edge(x, a) == out && g.has_edge(a, x) == inc)
    })
}

/// Quotient by a congruence partition, checking that every block is a module.
pub fn quotient(g: &Digraph, p: &Partition) -> Result<Digraph> {
    if let Some(block) = p.blocks().iter().find(|b| !is_module(g, b)) {
        return Err(Error::NotCongruence(block.as_slice().to_vec()));
    }
    Ok(g.contract(p))
}

/// Brute-force module oracle bound to one graph.
#[derive(Debug)]
pub struct ModuleOracle<'g> {
    graph: &'g Digraph,
    succ_mask: Vec<u32>,
    pred_mask: Vec<u32>,
    modules: Vec<u32>,
    strong: Vec<u32>,
}

impl<'g> ModuleOracle<'g> {
    pub fn new(graph: &'g Digraph) -> Result<Self> {
        Self::with_bound(graph, DEFAULT_ORACLE_BOUND)
    }

    pub fn with_bound(graph: &'g Digraph, bound: usize) -> Result<Self> {
        let n = graph.n();
        let bound = bound.min(MAX_ORACLE_BOUND);
        if n > bound {
            return Err(Error::OracleBoundExceeded { n, bound });
        }
        let mask = |list: &[usize]| list.iter().fold(0u32, |m, &v| m | (1 << v));
        let succ_mask: Vec<u32> = graph
            .vertices()
            .map(|v| mask(graph.successors(v)))
            .collect();
        let pred_mask: Vec<u32> = graph
            .vertices()
            .map(|v| mask(graph.predecessors(v)))
            .collect();

        let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
        let modules: Vec<u32> = (1..=full)
            .filter(|&m| {
                (0..n).filter(|&x| m & (1 << x) == 0).all(|x| {
                    let s = succ_mask[x] & m;
                    let p = pred_mask[x] & m;
                    (s == 0 || s == m) && (p == 0 || p == m)
                })
            })
            .collect();
        let overlap = |a: u32, b: u32| a & b != 0 && a & !b != 0 && b & !a != 0;
        let strong = modules
            .iter()
            .copied()
            .filter(|&m| !modules.iter().any(|&other| overlap(m, other)))
            .collect();
        Ok(ModuleOracle {
            graph,
            succ_mask,
            pred_mask,
            modules,
            strong,
        })
    }

    pub fn graph(&self) -> &Digraph {
        self.graph
    }

    fn to_set(mask: u32) -> VertexSet {
        (0..32).filter(|&v| mask & (1 << v) != 0).collect()
    }

    fn to_mask(&self, m: &VertexSet) -> Option<u32> {
        let n = self.graph.n();
        if m.iter().any(|v| v >= n) {
            return None;
        }
        Some(m.iter().fold(0, |acc, v| acc | (1 << v)))
    }

    /// Mask-based module test, independent of [`is_module`].
    pub fn is_module(&self, m: &VertexSet) -> bool {
        match self.to_mask(m) {
            Some(mask) if mask != 0 => self.modules.binary_search(&mask).is_ok(),
            _ => false,
        }
    }

    pub fn all_modules(&self) -> BTreeSet<VertexSet> {
        self.modules.iter().map(|&m| Self::to_set(m)).collect()
    }

    pub fn strong_modules(&self) -> BTreeSet<VertexSet> {
        self.strong.iter().map(|&m| Self::to_set(m)).collect()
    }

    /// Strong modules other than `V` and the singletons.
    pub fn nontrivial_strong_modules(&self) -> BTreeSet<VertexSet> {
        let n = self.graph.n();
        self.strong_modules()
            .into_iter()
            .filter(|m| m.len() > 1 && m.len() < n)
            .collect()
    }

    pub fn nontrivial_modules(&self) -> BTreeSet<VertexSet> {
        let n = self.graph.n();
        self.all_modules()
            .into_iter()
            .filter(|m| m.len() > 1 && m.len() < n)
            .collect()
    }

    fn require_module(&self, m: &VertexSet) -> Result<u32> {
        match self.to_mask(m) {
            Some(mask) if mask != 0 && self.modules.binary_search(&mask).is_ok() => Ok(mask),
            _ => Err(Error::NotAModule(m.as_slice().to_vec())),
        }
    }

    /// Smallest strong module containing `m`.
    pub fn minimal_strong_superset(&self, m: &VertexSet) -> Result<VertexSet> {
        let mask = self.require_module(m)?;
        let best = self
            .strong
            .iter()
            .copied()
            .filter(|&s| s & mask == mask)
            .min_by_key(|s| s.count_ones())
            .expect("V is a strong superset of every module");
        Ok(Self::to_set(best))
    }

    /// Maximal strong modules properly contained in `m`.
    pub fn maximal_strong_submodules(&self, m: &VertexSet) -> Result<Vec<VertexSet>> {
        let mask = self.require_module(m)?;
        let inside: Vec<u32> = self
            .strong
            .iter()
            .copied()
            .filter(|&s| s != mask && s & !mask == 0)
            .collect();
        let maximal = inside
            .iter()
            .copied()
            .filter(|&s| !inside.iter().any(|&t| t != s && s & !t == 0))
            .map(Self::to_set)
            .collect();
        Ok(maximal)
    }

    /// Classifies `m` by its child quotient over maximal strong submodules.
    pub fn module_kind(&self, m: &VertexSet) -> Result<ModuleKind> {
        self.require_module(m)?;
        if m.len() < 2 {
            return Err(Error::SingletonModule);
        }
        let children = self.maximal_strong_submodules(m)?;
        let local = self.graph.induced_subgraph(m);
        let blocks = children
            .iter()
            .map(|c| {
                c.iter()
                    .map(|v| m.as_slice().binary_search(&v).unwrap())
                    .collect()
            })
            .collect();
        let p = Partition::new(m.len(), blocks)
            .map_err(|e| Error::Invariant(format!("children do not partition module: {e}")))?;
        Ok(classify_quotient(&local.contract(&p)))
    }

    /// Vertices outside `m` that split it, found from the cached masks.
    pub fn splitters(&self, m: &VertexSet) -> Vec<usize> {
        let Some(mask) = self.to_mask(m) else {
            return Vec::new();
        };
        (0..self.graph.n())
            .filter(|&x| mask & (1 << x) == 0)
            .filter(|&x| {
                let s = self.succ_mask[x] & mask;
                let p = self.pred_mask[x] & mask;
                !((s == 0 || s == mask) && (p == 0 || p == mask))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from(v.to_vec())
    }

    fn path4() -> Digraph {
        Digraph::from_edges(4, [(0, 1), (1, 2), (2, 3)])
            .unwrap()
            .undirected_closure()
    }

    #[test]
    fn p4_is_prime() {
        let g = path4();
        let oracle = ModuleOracle::new(&g).unwrap();
        assert!(oracle.nontrivial_modules().is_empty());
        assert_eq!(
            oracle.module_kind(&VertexSet::full(4)),
            Ok(ModuleKind::Prime)
        );
    }

    #[test]
    fn trivial_modules_always_pass() {
        let g = path4();
        assert!(is_module(&g, &VertexSet::full(4)));
        for v in 0..4 {
            assert!(is_module(&g, &VertexSet::singleton(v)));
        }
        assert!(!is_module(&g, &VertexSet::default()));
    }

    #[test]
    fn bound_is_enforced() {
        let g = Digraph::new(15);
        assert_eq!(
            ModuleOracle::new(&g).unwrap_err(),
            Error::OracleBoundExceeded { n: 15, bound: 14 }
        );
        assert!(ModuleOracle::with_bound(&Digraph::new(5), 4).is_err());
    }

    #[test]
    fn edgeless_pair_is_parallel() {
        let g = Digraph::new(3);
        let oracle = ModuleOracle::new(&g).unwrap();
        assert_eq!(oracle.module_kind(&set(&[0, 2])), Ok(ModuleKind::Parallel));
        assert_eq!(oracle.module_kind(&set(&[1])), Err(Error::SingletonModule));
    }

    #[test]
    fn quotient_rejects_non_module_block() {
        let g = path4();
        let p = Partition::new(4, vec![set(&[0, 1]), set(&[2]), set(&[3])]).unwrap();
        assert_eq!(quotient(&g, &p), Err(Error::NotCongruence(vec![0, 1])));
    }

    #[test]
    fn superset_of_non_module_is_an_error() {
        let g = path4();
        let oracle = ModuleOracle::new(&g).unwrap();
        assert!(matches!(
            oracle.minimal_strong_superset(&set(&[0, 2])),
            Err(Error::NotAModule(_))
        ));
    }
}
