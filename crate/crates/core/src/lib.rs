//! Commuting graphs of finite groups, and certifying recognizers for the
//! commuting graphs of extraspecial groups, nonabelian groups of order `p^3`,
//! Frobenius groups, odd dihedral groups, and direct products of these.
//!
//! Groups are given as multiplication tables ([`GroupTable`]) with the
//! identity at index 0. Graphs ([`Graph`]) are simple and undirected with
//! bitset adjacency rows. Every recognizer that accepts returns a
//! [`CertifiedLabeling`], which can only be obtained by passing the
//! commutation check in [`commuting::verify_labeling`].

pub mod commuting;
pub mod error;
pub mod extraspecial;
pub mod graph;
pub mod group;
pub mod harness;
pub mod products;
pub mod structure;
pub mod symplectic;
pub mod verdict;

pub use commuting::{build_commuting_graph, CertifiedLabeling, Labeling};
pub use error::{Error, Result};
pub use graph::Graph;
pub use group::GroupTable;
pub use verdict::{Rejection, Verdict};
