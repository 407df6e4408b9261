//! Proptest strategies for random graphs.

#![allow(dead_code)]

use proptest::prelude::*;
use transmod::Digraph;

/// Arbitrary simple digraph with `lo..=hi` vertices.
pub fn digraph(lo: usize, hi: usize) -> impl Strategy<Value = Digraph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let arcs = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| a != b && bits[a * n + b]);
            Digraph::from_edges(n, arcs).unwrap()
        })
    })
}

/// Arbitrary DAG whose arcs respect a shuffled vertex order.
pub fn dag(lo: usize, hi: usize) -> impl Strategy<Value = Digraph> {
    (lo..=hi).prop_flat_map(|n| {
        (
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            proptest::collection::vec(any::<bool>(), n * n),
        )
            .prop_map(move |(perm, bits)| {
                let arcs = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| bits[i * n + j])
                    .map(|(i, j)| (perm[i], perm[j]));
                Digraph::from_edges(n, arcs).unwrap()
            })
    })
}
