mod common;
mod strategies;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use strategies::{dag, digraph};
use transmod::*;

fn subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (1u32..(1 << n)).map(move |mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
}

fn laminar(family: &BTreeSet<VertexSet>) -> bool {
    family.iter().all(|a| family.iter().all(|b| !a.overlaps(b)))
}

fn series_relabelled(t: &MDTree) -> Term {
    t.to_term()
        .map_kinds(|k| {
            if k == ModuleKind::Ordered {
                ModuleKind::Series
            } else {
                k
            }
        })
        .canonicalize()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn oracle_module_tests_agree(g in digraph(1, 8)) {
        let oracle = ModuleOracle::new(&g).unwrap();
        for m in subsets(g.n()) {
            let naive = naive_is_module(&g, m.as_slice());
            prop_assert_eq!(oracle.is_module(&m), naive, "{}", m);
            prop_assert_eq!(is_module(&g, &m), naive, "{}", m);
            prop_assert_eq!(oracle.splitters(&m).is_empty(), naive);
        }
    }

    #[test]
    fn strong_modules_are_laminar_and_few(g in digraph(1, 8)) {
        let oracle = ModuleOracle::new(&g).unwrap();
        let strong = oracle.strong_modules();
        prop_assert_eq!(&strong, &naive_strong_modules(&g));
        prop_assert!(laminar(&strong));
        prop_assert!(strong.len() < 2 * g.n());
        prop_assert_eq!(strong_modules(&g), strong);
    }

    #[test]
    fn weak_modules_share_the_kind_of_their_strong_cover(g in digraph(2, 7)) {
        let oracle = ModuleOracle::new(&g).unwrap();
        let strong = oracle.strong_modules();
        for m in oracle.all_modules() {
            if m.len() < 2 || strong.contains(&m) {
                continue;
            }
            let cover = oracle.minimal_strong_superset(&m).unwrap();
            let kind = oracle.module_kind(&m).unwrap();
            prop_assert_ne!(kind, ModuleKind::Prime);
            prop_assert_eq!(kind, oracle.module_kind(&cover).unwrap());
        }
    }

    #[test]
    fn modules_survive_undirected_closure(g in digraph(1, 8)) {
        let u = g.undirected_closure();
        let ou = ModuleOracle::new(&u).unwrap();
        for m in ModuleOracle::new(&g).unwrap().all_modules() {
            prop_assert!(ou.is_module(&m));
        }
    }

    #[test]
    fn tree_matches_oracle(g in digraph(1, 10)) {
        let closure = g.transitive_closure();
        let oracle = ModuleOracle::new(&closure).unwrap();
        let t = decompose_digraph(&g).unwrap();
        prop_assert_eq!(t.module_sets(), oracle.strong_modules());
        for i in t.internal_nodes() {
            prop_assert_eq!(t.module_kind(i), Some(oracle.module_kind(t.vertices(i)).unwrap()));
            let q = t.child_quotient(&closure, i);
            prop_assert_eq!(t.module_kind(i), Some(mdtree::classify_quotient(&q)));
        }
        prop_assert_eq!(t.vertex_count(), g.n());
        prop_assert!(t.internal_nodes().count() < g.n().max(2));
        prop_assert!(t.is_reduced());
    }

    #[test]
    fn transitive_dag_and_its_undirected_closure_share_strong_modules(g in dag(1, 9)) {
        let g = g.transitive_closure();
        let directed = ModuleOracle::new(&g).unwrap().strong_modules();
        let undirected = ModuleOracle::new(&g.undirected_closure()).unwrap().strong_modules();
        prop_assert_eq!(directed, undirected);
    }

    #[test]
    fn dag_tree_is_the_undirected_tree_relabelled(g in dag(1, 9)) {
        let g = g.transitive_closure();
        let directed = decompose_transitive_dag(&g).unwrap();
        let undirected = decompose_undirected(&g.undirected_closure()).unwrap();
        prop_assert_eq!(series_relabelled(&directed), undirected.to_term());
        prop_assert!(undirected.internal_nodes().all(|i| undirected.module_kind(i) != Some(ModuleKind::Ordered)));
    }

    #[test]
    fn ordered_children_form_intervals(g in digraph(2, 9)) {
        let closure = g.transitive_closure();
        let t = decompose_digraph(&g).unwrap();
        for i in t.internal_nodes() {
            if t.module_kind(i) != Some(ModuleKind::Ordered) {
                continue;
            }
            let kids: Vec<&VertexSet> = t.children(i).iter().map(|&c| t.vertices(c)).collect();
            for w in kids.windows(2) {
                for a in w[0].iter() {
                    for b in w[1].iter() {
                        prop_assert!(closure.has_edge(a, b));
                    }
                }
            }
            let k = kids.len();
            for mask in 1u32..(1 << k) {
                let chosen: Vec<usize> = (0..k).filter(|&j| mask >> j & 1 == 1).collect();
                let union: VertexSet = chosen.iter().flat_map(|&j| kids[j].iter()).collect();
                let interval = chosen.last().unwrap() - chosen[0] + 1 == chosen.len();
                prop_assert_eq!(is_module(&closure, &union), interval);
            }
        }
    }
}

#[test]
fn complete_join_is_series() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let left = random_digraph(&mut rng, 3, 0.4);
        let right = random_digraph(&mut rng, 3, 0.4);
        let mut arcs: Vec<_> = left.edges().collect();
        arcs.extend(right.edges().map(|(a, b)| (a + 3, b + 3)));
        for a in 0..3 {
            for b in 3..6 {
                arcs.push((a, b));
                arcs.push((b, a));
            }
        }
        let g = Digraph::from_edges(6, arcs).unwrap();
        let oracle = ModuleOracle::new(&g).unwrap();
        assert_eq!(
            oracle.module_kind(&VertexSet::full(6)),
            Ok(ModuleKind::Series)
        );
    }
}

#[test]
fn oracle_refuses_large_graphs() {
    let g = Digraph::new(oracle::DEFAULT_ORACLE_BOUND + 1);
    assert!(matches!(
        ModuleOracle::new(&g),
        Err(Error::OracleBoundExceeded { .. })
    ));
}

#[test]
fn module_kind_preconditions() {
    let g = Digraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
    let oracle = ModuleOracle::new(&g).unwrap();
    assert_eq!(
        oracle.module_kind(&VertexSet::singleton(0)),
        Err(Error::SingletonModule)
    );
    assert!(matches!(
        oracle.module_kind(&VertexSet::new(vec![0, 2])),
        Err(Error::NotAModule(_))
    ));
    let pair = Digraph::new(2);
    assert_eq!(
        ModuleOracle::new(&pair)
            .unwrap()
            .module_kind(&VertexSet::full(2)),
        Ok(ModuleKind::Parallel)
    );
}
