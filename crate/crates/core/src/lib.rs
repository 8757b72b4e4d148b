//! Exhaustive generation of unlabeled k-regular digraphs with loops and
//! multiarcs, together with their automorphism groups, cycle indices,
//! component and rooted counts, and the correspondence between 2-regular
//! digraphs and fully contracted products of Riemann tensors.

pub mod canonical;
pub mod digraph;
pub mod enumerate;
pub mod error;
pub mod formats;
pub mod lovelock;
pub mod polya;
pub mod reference;
pub mod transforms;
pub mod verify;

pub use canonical::{
    apply_permutation, automorphism_group, canonical_form, canonical_labeling, AutomorphismGroup,
    CanonicalLabeling, Permutation,
};
pub use digraph::{ArcList, ComponentPartition, Digraph};
pub use enumerate::{
    classify_by_components, count_labeled, enumerate_unlabeled, enumerate_unlabeled_with,
    EnumerationFilter, EnumerationOptions, GraphRecord,
};
pub use error::{Error, Result};
pub use lovelock::{from_bipartite, render_term, to_bipartite, BipartiteGraph, TensorTerm};
pub use polya::{rooted_table, CycleIndex, RootedPolynomial, RootedTable};
pub use transforms::{assemble_unlabeled_table, bell_transform, multiset_transform, verify_egf, CountTable, TableKind};
