//! Desk-scale toolkit for maximum subgraph-copy counts in graphs avoiding a
//! forbidden subgraph: exact counting, extremal constructions over finite
//! fields and progression-free sets, closed-form bound evaluators, blow-up
//! growth checkers for trees and bipartite patterns, and an exhaustive
//! oracle with persisted certificates.

pub mod bounds;
pub mod canon;
pub mod constructions;
pub mod counting;
pub mod g6;
pub mod gfield;
pub mod graph;
pub mod oracle;
pub mod trees;
pub mod verify;

pub use graph::{Graph, VertexSet};
