//! Modular decomposition of directed graphs through their transitive closures.
//!
//! The decomposition tree of `G*` is built without materialising more than
//! the closure of the condensation. Alongside it the crate provides flow
//! reduction by sequential and parallel merges, transitive orientation of
//! comparability graphs, and a two-order reachability index for closures
//! whose complement is a comparability graph.

pub mod algo;
pub mod decompose;
pub mod error;
pub mod graph;
pub mod io;
pub mod mdtree;
pub mod oracle;
pub mod orient;
pub mod permrep;
pub mod reduce;

pub use algo::{strongly_connected_components, topological_order};
pub use decompose::{
    decompose_digraph, decompose_general, decompose_transitive_dag, decompose_undirected,
    strong_modules,
};
pub use error::{Error, Result};
pub use graph::{Digraph, Labels, Partition, VertexId, VertexSet};
pub use io::{parse_edge_list, parse_edge_list_bytes, write_edge_list, ParseError, ParseOptions};
pub use mdtree::{MDNode, MDTree, ModuleKind, NodeIndex, NodeKind, Term};
pub use oracle::{is_module, quotient, ModuleOracle};
pub use orient::{
    implication_classes, orient_complement, orient_complement_with, transitive_orientation,
    ComplementOrientation, ComplementStrategy, EdgeOrientation, ImplicationClasses,
    OrientationSource, Witness,
};
pub use permrep::{build_permrep, build_permrep_with, linearize, LinearOrder, PermRep};
pub use reduce::{
    decompose_via_reduction, reduce, reduce_with, Kernel, MergeStep, ReduceOptions, Reducer, Rule,
    Schedule, SignatureBasis,
};
