mod common;
mod strategies;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use strategies::{dag, digraph};
use transmod::reduce::{pipeline_kernel, KernelShape};
use transmod::*;

fn shape_with(g: &Digraph, schedule: Schedule, basis: SignatureBasis) -> KernelShape {
    let opts = ReduceOptions {
        schedule: Some(schedule),
        basis,
        check_exclusivity: false,
    };
    reduce_with(g, &opts).unwrap().shape()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn no_vertex_is_in_both_a_seq_and_a_par_pair(g in dag(1, 9), seed in any::<u64>()) {
        let opts = ReduceOptions {
            schedule: Some(Schedule::Random(seed)),
            basis: SignatureBasis::default(),
            check_exclusivity: true,
        };
        prop_assert!(reduce_with(&g, &opts).is_ok());
    }

    #[test]
    fn kernel_is_independent_of_rule_order(g in digraph(1, 9), seeds in proptest::collection::vec(any::<u64>(), 5)) {
        let reference = reduce(&g).shape();
        for seed in seeds {
            prop_assert_eq!(&shape_with(&g, Schedule::Random(seed), SignatureBasis::default()), &reference);
        }
    }

    #[test]
    fn kernel_is_irreducible(g in digraph(1, 9)) {
        let k = reduce(&g);
        let kg = k.graph();
        for a in kg.vertices() {
            for b in kg.vertices() {
                prop_assert!(a == b || !reduce::seq_applicable(kg, a, b));
                prop_assert!(a == b || !reduce::par_applicable(kg, a, b));
            }
        }
        // fragments partition the input
        let mut seen = vec![false; g.n()];
        for i in 0..k.len() {
            for v in k.members(i).iter() {
                prop_assert!(!seen[v]);
                seen[v] = true;
            }
        }
        prop_assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn fragments_are_modules_of_the_closure(g in digraph(1, 9)) {
        let closure = g.transitive_closure();
        let k = reduce(&g);
        for i in 0..k.len() {
            prop_assert!(naive_is_module(&closure, k.members(i).as_slice()));
        }
    }

    #[test]
    fn dag_fragments_have_the_kind_of_their_rule(g in dag(2, 9)) {
        let closure = g.transitive_closure();
        let oracle = ModuleOracle::new(&closure).unwrap();
        let k = reduce(&g);
        for fragment in k.fragments() {
            let mut stack = vec![fragment];
            while let Some(t) = stack.pop() {
                if let Term::Node(kind, children) = t {
                    prop_assert_eq!(oracle.module_kind(&t.vertices()), Ok(*kind));
                    if *kind == ModuleKind::Ordered {
                        for w in children.windows(2) {
                            for a in w[0].vertices().iter() {
                                for b in w[1].vertices().iter() {
                                    prop_assert!(closure.has_edge(a, b));
                                }
                            }
                        }
                    }
                    stack.extend(children.iter());
                }
            }
        }
    }

    #[test]
    fn signature_collisions_never_cause_wrong_merges(g in digraph(1, 9), bits in prop_oneof![Just(0u32), Just(1), Just(2), Just(64)]) {
        let reference = reduce(&g).shape();
        let basis = SignatureBasis::default().truncated(bits);
        prop_assert_eq!(&shape_with(&g, Schedule::Fifo, basis), &reference);
        prop_assert_eq!(&shape_with(&g, Schedule::Random(bits as u64), basis), &reference);
    }

    #[test]
    fn pipeline_agrees_with_direct_decomposition(g in digraph(1, 10)) {
        let direct = decompose_digraph(&g).unwrap();
        prop_assert_eq!(&decompose_via_reduction(&g, false).unwrap(), &direct);
        prop_assert_eq!(&decompose_via_reduction(&g, true).unwrap(), &direct);
        prop_assert_eq!(direct.module_sets(), naive_strong_modules(&g.transitive_closure()));
    }
}

#[test]
fn prime_free_reduced_orders_collapse() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=12 {
        for _ in 0..20 {
            let g = random_prime_free(&mut rng, n, false);
            let reduced = g.transitive_closure().transitive_reduction().unwrap();
            assert_eq!(
                reduce(&reduced).len(),
                1,
                "{:?}",
                reduced.edges().collect::<Vec<_>>()
            );
        }
    }
}

#[test]
fn prime_free_with_components_collapse_in_the_pipeline() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 1..=12 {
        for _ in 0..20 {
            let g = random_prime_free(&mut rng, n, true);
            let (k, _) = pipeline_kernel(&g, true).unwrap();
            assert_eq!(k.len(), 1);
        }
    }
}

#[test]
fn truncated_basis_collides() {
    let basis = SignatureBasis::default().truncated(2);
    let values: std::collections::BTreeSet<u128> = (0..64).map(|v| basis.value(v)).collect();
    assert!(values.len() <= 4);
    assert_ne!(
        SignatureBasis::default().value(0),
        SignatureBasis::with_seed(1).value(0)
    );
}
