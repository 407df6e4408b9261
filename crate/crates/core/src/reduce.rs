//! Sequential/parallel flow reduction.
//!
//! Two merge rules are applied until neither fires:
//!
//! * **sequential flow**: `b` is the only successor of `a` and `a` the only
//!   predecessor of `b`;
//! * **parallel flow**: `a` and `b` have identical predecessor and successor
//!   sets.
//!
//! The rules are confluent, so the irreducible kernel does not depend on the
//! order of application. Every merged vertex set is a module of the input's
//! transitive closure; sequential merges yield ordered modules, parallel
//! merges parallel ones, and the engine records an (unreduced) decomposition
//! fragment for each.
//!
//! Parallel candidates are found through 128-bit neighbourhood signatures:
//! the XOR of a per-vertex hash over each predecessor and successor set.
//! Signatures only narrow the search. Every merge is preceded by an exact set
//! comparison, so hash collisions can never cause a wrong merge.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::decompose::{component_term, decompose_transitive_dag};
use crate::error::{Error, Result};
use crate::graph::{Digraph, Partition, VertexId, VertexSet};
use crate::mdtree::{MDTree, ModuleKind, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Sequential,
    Parallel,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Sequential => "seq",
            Rule::Parallel => "par",
        })
    }
}

/// One rule application. Ids below the input's vertex count are input
/// vertices; larger ids are fresh super-vertices, assigned in merge order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MergeStep {
    pub rule: Rule,
    pub left: usize,
    pub right: usize,
    pub merged: usize,
}

/// Order in which pending rule applications are taken from the worklist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    Fifo,
    /// Uniformly random pending candidate, from a seeded generator.
    Random(u64),
}

/// Per-vertex hash values feeding the neighbourhood signatures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignatureBasis {
    seed: u64,
    bits: u32,
}

/// Library-wide key for the signature hash.
pub const DEFAULT_SIGNATURE_SEED: u64 = 0x7472_616e_736d_6f64;

impl Default for SignatureBasis {
    fn default() -> Self {
        SignatureBasis {
            seed: DEFAULT_SIGNATURE_SEED,
            bits: 128,
        }
    }
}

impl SignatureBasis {
    pub fn with_seed(seed: u64) -> Self {
        SignatureBasis { seed, bits: 128 }
    }

    /// Keeps only the low `bits` bits of each value. Small widths force
    /// collisions and exist for testing the exact-comparison path.
    pub fn truncated(self, bits: u32) -> Self {
        SignatureBasis {
            bits: bits.min(128),
            ..self
        }
    }

    pub fn value(&self, id: usize) -> u128 {
        let mut hasher = Sha256::new();
        hasher.update(self.seed.to_le_bytes());
        hasher.update((id as u64).to_le_bytes());
        let digest = hasher.finalize();
        let mut bytes = [0u8; 16];
        bytes.copy_from_slice(&digest[..16]);
        let full = u128::from_le_bytes(bytes);
        match self.bits {
            128 => full,
            0 => 0,
            b => full & ((1u128 << b) - 1),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ReduceOptions {
    pub schedule: Option<Schedule>,
    pub basis: SignatureBasis,
    /// Verify after every merge that no vertex takes part in both an
    /// applicable sequential and an applicable parallel pair.
    pub check_exclusivity: bool,
}

/// True iff the sequential flow rule applies to `(a, b)`.
pub fn seq_applicable(g: &Digraph, a: VertexId, b: VertexId) -> bool {
    a != b && a < g.n() && b < g.n() && g.successors(a) == [b] && g.predecessors(b) == [a]
}

/// True iff the parallel flow rule applies to `(a, b)`.
pub fn par_applicable(g: &Digraph, a: VertexId, b: VertexId) -> bool {
    a != b
        && a < g.n()
        && b < g.n()
        && g.successors(a) == g.successors(b)
        && g.predecessors(a) == g.predecessors(b)
}

type SigKey = (u128, u128);

/// Mutable reduction state over super-vertices.
#[derive(Debug)]
pub struct Reducer {
    input_n: usize,
    succ: Vec<BTreeSet<usize>>,
    pred: Vec<BTreeSet<usize>>,
    alive: Vec<bool>,
    fragments: Vec<Option<Term>>,
    basis: SignatureBasis,
    basis_values: Vec<u128>,
    pred_sig: Vec<u128>,
    succ_sig: Vec<u128>,
    buckets: HashMap<SigKey, BTreeSet<usize>>,
    worklist: VecDeque<(Rule, usize, usize)>,
    log: Vec<MergeStep>,
}

impl Reducer {
    pub fn new(g: &Digraph, basis: SignatureBasis) -> Self {
        let n = g.n();
        let basis_values: Vec<u128> = (0..n).map(|v| basis.value(v)).collect();
        let sig = |list: &[usize]| list.iter().fold(0u128, |acc, &u| acc ^ basis_values[u]);
        let pred_sig = g.vertices().map(|v| sig(g.predecessors(v))).collect();
        let succ_sig = g.vertices().map(|v| sig(g.successors(v))).collect();
        let mut reducer = Reducer {
            input_n: n,
            succ: g
                .vertices()
                .map(|v| g.successors(v).iter().copied().collect())
                .collect(),
            pred: g
                .vertices()
                .map(|v| g.predecessors(v).iter().copied().collect())
                .collect(),
            alive: vec![true; n],
            fragments: (0..n).map(|v| Some(Term::Leaf(v))).collect(),
            basis,
            basis_values,
            pred_sig,
            succ_sig,
            buckets: HashMap::new(),
            worklist: VecDeque::new(),
            log: Vec::new(),
        };
        for v in 0..n {
            reducer.bucket(v);
        }
        for v in 0..n {
            reducer.examine(v);
        }
        reducer
    }

    fn key(&self, v: usize) -> SigKey {
        (self.pred_sig[v], self.succ_sig[v])
    }

    fn bucket(&mut self, v: usize) {
        let key = self.key(v);
        self.buckets.entry(key).or_default().insert(v);
    }

    fn unbucket(&mut self, v: usize) {
        let key = self.key(v);
        if let Some(bucket) = self.buckets.get_mut(&key) {
            bucket.remove(&v);
            if bucket.is_empty() {
                self.buckets.remove(&key);
            }
        }
    }

    pub fn live_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.alive.len()).filter(|&v| self.alive[v])
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    pub fn successors(&self, v: usize) -> &BTreeSet<usize> {
        &self.succ[v]
    }

    pub fn predecessors(&self, v: usize) -> &BTreeSet<usize> {
        &self.pred[v]
    }

    pub fn fragment(&self, v: usize) -> Option<&Term> {
        self.fragments.get(v).and_then(Option::as_ref)
    }

    pub fn log(&self) -> &[MergeStep] {
        &self.log
    }

    pub fn seq_applicable(&self, a: usize, b: usize) -> bool {
        a != b
            && self.is_alive(a)
            && self.is_alive(b)
            && self.succ[a].len() == 1
            && self.succ[a].contains(&b)
            && self.pred[b].len() == 1
            && self.pred[b].contains(&a)
    }

    pub fn par_applicable(&self, a: usize, b: usize) -> bool {
        a != b
            && self.is_alive(a)
            && self.is_alive(b)
            && self.succ[a] == self.succ[b]
            && self.pred[a] == self.pred[b]
    }

    pub fn applicable(&self, rule: Rule, a: usize, b: usize) -> bool {
        match rule {
            Rule::Sequential => self.seq_applicable(a, b),
            Rule::Parallel => self.par_applicable(a, b),
        }
    }

    /// Some live vertex other than `v` with exactly `v`'s neighbourhoods.
    fn parallel_partner(&self, v: usize) -> Option<usize> {
        self.buckets
            .get(&self.key(v))?
            .iter()
            .copied()
            .find(|&w| self.par_applicable(v, w))
    }

    fn examine(&mut self, v: usize) {
        if !self.alive[v] {
            return;
        }
        if self.succ[v].len() == 1 {
            let w = *self.succ[v].first().expect("one successor");
            if self.pred[w].len() == 1 {
                self.worklist.push_back((Rule::Sequential, v, w));
            }
        }
        if self.pred[v].len() == 1 {
            let u = *self.pred[v].first().expect("one predecessor");
            if self.succ[u].len() == 1 {
                self.worklist.push_back((Rule::Sequential, u, v));
            }
        }
        if let Some(w) = self.parallel_partner(v) {
            self.worklist
                .push_back((Rule::Parallel, v.min(w), v.max(w)));
        }
    }

    /// Applies `rule` to `(a, b)` and returns the fresh super-vertex id.
    pub fn merge(&mut self, rule: Rule, a: usize, b: usize) -> Result<usize> {
        if !self.applicable(rule, a, b) {
            return Err(Error::Invariant(format!(
                "{rule} rule does not apply to ({a}, {b})"
            )));
        }
        let c = self.alive.len();
        let bc = self.basis.value(c);
        self.basis_values.push(bc);

        let strip = |set: BTreeSet<usize>| -> BTreeSet<usize> {
            set.into_iter().filter(|&x| x != a && x != b).collect()
        };
        let succ = strip(&self.succ[a] | &self.succ[b]);
        let pred = strip(&self.pred[a] | &self.pred[b]);
        let neighbours: BTreeSet<usize> = &succ | &pred;

        self.unbucket(a);
        self.unbucket(b);
        for &x in &neighbours {
            self.unbucket(x);
        }
        let (ba, bb) = (self.basis_values[a], self.basis_values[b]);
        for &x in &succ {
            let p = &mut self.pred[x];
            let mut sig = self.pred_sig[x];
            if p.remove(&a) {
                sig ^= ba;
            }
            if p.remove(&b) {
                sig ^= bb;
            }
            p.insert(c);
            self.pred_sig[x] = sig ^ bc;
        }
        for &x in &pred {
            let s = &mut self.succ[x];
            let mut sig = self.succ_sig[x];
            if s.remove(&a) {
                sig ^= ba;
            }
            if s.remove(&b) {
                sig ^= bb;
            }
            s.insert(c);
            self.succ_sig[x] = sig ^ bc;
        }

        let kind = match rule {
            Rule::Sequential => ModuleKind::Ordered,
            Rule::Parallel => ModuleKind::Parallel,
        };
        let left = self.fragments[a].take().expect("live fragment");
        let right = self.fragments[b].take().expect("live fragment");
        self.fragments.push(Some(join(kind, left, right)));

        let sig =
            |set: &BTreeSet<usize>| set.iter().fold(0u128, |acc, &u| acc ^ self.basis_values[u]);
        let (ps, ss) = (sig(&pred), sig(&succ));
        self.pred_sig.push(ps);
        self.succ_sig.push(ss);
        self.succ.push(succ);
        self.pred.push(pred);
        self.alive[a] = false;
        self.alive[b] = false;
        self.alive.push(true);
        self.succ[a].clear();
        self.pred[a].clear();
        self.succ[b].clear();
        self.pred[b].clear();

        self.bucket(c);
        for &x in &neighbours {
            self.bucket(x);
        }
        self.log.push(MergeStep {
            rule,
            left: a,
            right: b,
            merged: c,
        });
        self.examine(c);
        for &x in &neighbours {
            self.examine(x);
        }
        Ok(c)
    }

    /// Every currently applicable pair, found exhaustively.
    pub fn applicable_pairs(&self) -> Vec<(Rule, usize, usize)> {
        let live: Vec<usize> = self.live_vertices().collect();
        let mut out = Vec::new();
        for &a in &live {
            for &b in &live {
                if self.seq_applicable(a, b) {
                    out.push((Rule::Sequential, a, b));
                }
                if a < b && self.par_applicable(a, b) {
                    out.push((Rule::Parallel, a, b));
                }
            }
        }
        out
    }

    fn check_exclusivity(&self) -> Result<()> {
        for a in self.live_vertices() {
            if self.succ[a].len() != 1 {
                continue;
            }
            let b = *self.succ[a].first().expect("one successor");
            if !self.seq_applicable(a, b) {
                continue;
            }
            for v in [a, b] {
                if let Some(x) = self.live_vertices().find(|&x| self.par_applicable(v, x)) {
                    return Err(Error::Invariant(format!(
                        "seq({a}, {b}) coexists with par({v}, {x})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Applies rules until none remains applicable.
    pub fn run(&mut self, schedule: Schedule, check_exclusivity: bool) -> Result<()> {
        let mut rng = match schedule {
            Schedule::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            Schedule::Fifo => None,
        };
        if check_exclusivity {
            self.check_exclusivity()?;
        }
        loop {
            let next = match rng.as_mut() {
                Some(rng) if !self.worklist.is_empty() => {
                    let i = rng.gen_range(0..self.worklist.len());
                    self.worklist.swap_remove_back(i)
                }
                _ => self.worklist.pop_front(),
            };
            let Some((rule, a, b)) = next else { break };
            if !self.applicable(rule, a, b) {
                continue;
            }
            self.merge(rule, a, b)?;
            if check_exclusivity {
                self.check_exclusivity()?;
            }
        }
        if let Some((rule, a, b)) = self.applicable_pairs().first() {
            return Err(Error::Invariant(format!(
                "worklist drained while {rule}({a}, {b}) still applies"
            )));
        }
        Ok(())
    }

    pub fn into_kernel(self) -> Kernel {
        let mut live: Vec<usize> = self.live_vertices().collect();
        let fragments_by_id = self.fragments;
        live.sort_by_key(|&v| fragments_by_id[v].as_ref().expect("live").min_vertex());
        let mut local = vec![usize::MAX; self.alive.len()];
        for (i, &v) in live.iter().enumerate() {
            local[v] = i;
        }
        let arcs: Vec<(usize, usize)> = live
            .iter()
            .flat_map(|&v| self.succ[v].iter().map(move |&w| (v, w)))
            .map(|(v, w)| (local[v], local[w]))
            .collect();
        let graph = Digraph::from_arcs_lossy(live.len(), arcs);
        let mut fragments_by_id = fragments_by_id;
        let fragments = live
            .iter()
            .map(|&v| fragments_by_id[v].take().expect("live fragment"))
            .collect();
        Kernel {
            graph,
            fragments,
            super_ids: live,
            log: self.log,
            input_n: self.input_n,
        }
    }
}

/// Combines two fragments under a `kind` node, splicing same-kind roots.
fn join(kind: ModuleKind, left: Term, right: Term) -> Term {
    let mut children = Vec::new();
    for t in [left, right] {
        match t {
            Term::Node(k, grand) if k == kind => children.extend(grand),
            other => children.push(other),
        }
    }
    Term::Node(kind, children)
}

/// The irreducible graph left after exhaustive rule application, with one
/// decomposition fragment per super-vertex. Kernel vertices are numbered by
/// the smallest input vertex they contain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    graph: Digraph,
    fragments: Vec<Term>,
    super_ids: Vec<usize>,
    log: Vec<MergeStep>,
    input_n: usize,
}

/// Order-independent summary of a kernel: the partition of input vertices
/// and the arcs between blocks.
pub type KernelShape = (BTreeSet<VertexSet>, BTreeSet<(VertexSet, VertexSet)>);

impl Kernel {
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.graph.n()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.n() == 0
    }

    pub fn fragments(&self) -> &[Term] {
        &self.fragments
    }

    /// Engine id of each kernel vertex, as used in the merge log.
    pub fn super_ids(&self) -> &[usize] {
        &self.super_ids
    }

    pub fn log(&self) -> &[MergeStep] {
        &self.log
    }

    pub fn input_len(&self) -> usize {
        self.input_n
    }

    pub fn members(&self, k: usize) -> VertexSet {
        self.fragments[k].vertices()
    }

    pub fn partition(&self) -> Partition {
        let blocks = (0..self.len()).map(|k| self.members(k)).collect();
        Partition::new(self.input_n, blocks).expect("fragments partition the input")
    }

    pub fn shape(&self) -> KernelShape {
        let members: Vec<VertexSet> = (0..self.len()).map(|k| self.members(k)).collect();
        let blocks = members.iter().cloned().collect();
        let arcs = self
            .graph
            .edges()
            .map(|(a, b)| (members[a].clone(), members[b].clone()))
            .collect();
        (blocks, arcs)
    }
}

/// Reduces `g` with the default FIFO schedule.
pub fn reduce(g: &Digraph) -> Kernel {
    reduce_with(g, &ReduceOptions::default()).expect("reduction without checks cannot fail")
}

pub fn reduce_with(g: &Digraph, options: &ReduceOptions) -> Result<Kernel> {
    let mut reducer = Reducer::new(g, options.basis);
    reducer.run(
        options.schedule.unwrap_or(Schedule::Fifo),
        options.check_exclusivity,
    )?;
    Ok(reducer.into_kernel())
}

/// Kernel of the decomposition pipeline: components are contracted first
/// and, with `pre_reduce`, the condensation is transitively reduced.
/// Kernel fragments refer to vertices of the returned condensation.
pub fn pipeline_kernel(g: &Digraph, pre_reduce: bool) -> Result<(Kernel, Partition)> {
    let (dag, components) = g.scc_contract();
    let dag = if pre_reduce {
        dag.transitive_reduction()?
    } else {
        dag
    };
    Ok((reduce(&dag), components))
}

/// Modular decomposition of the transitive closure of `g`, computed on the
/// reduced kernel. Produces the same tree as
/// [`decompose_digraph`](crate::decompose::decompose_digraph).
pub fn decompose_via_reduction(g: &Digraph, pre_reduce: bool) -> Result<MDTree> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let (kernel, components) = pipeline_kernel(g, pre_reduce)?;
    let kernel_term = if kernel.len() == 1 {
        Term::Leaf(0)
    } else {
        decompose_transitive_dag(&kernel.graph().transitive_closure())?.to_term()
    };
    let term = kernel_term
        .substitute(&mut |k| kernel.fragments()[k].clone())
        .substitute(&mut |d| component_term(&components.blocks()[d]));
    Ok(MDTree::from_term(term.prune()))
}
