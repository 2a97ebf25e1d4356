//! Oriented graphs and tournaments: construction, orientation-preserving
//! embeddings, perfect tilings by exact cover, residue-lattice divisibility
//! analysis and regular-tournament search.
//!
//! Every search in this crate is exact and deterministic. Searches that take
//! a node budget report running out of budget as a distinct outcome rather
//! than as "not found".

pub mod analysis;
pub mod bitset;
pub mod embed;
pub mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod lattice;
pub mod search;
pub mod tiling;
pub mod verify;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use graph::{Classification, IndexVector, Orientation, OrientedGraph, Partition, MAX_VERTICES};
