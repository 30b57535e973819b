//! Local metric dimension of graphs with clique number at most 4.
//!
//! The main path is [`packing::greedy_packing`] followed by
//! [`construction::construct`], which yields a local resolving set of size
//! at most `floor(2n/3)` for connected graphs with clique number 4.
//! [`verify`] checks such sets edge by edge and [`exact`] computes the true
//! minimum for small graphs.

pub mod bounds;
pub mod clique;
pub mod construction;
pub mod distance;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod io;
pub mod packing;
pub mod sweep;
pub mod verify;

pub use graph::{Graph, GraphError, Vertex};
