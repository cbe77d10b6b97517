//! Stable districting of weighted road graphs.
//!
//! Every node of a connected, undirected, positively weighted graph is
//! assigned to one of `k` center nodes. Each center takes exactly its quota
//! of nodes, and the assignment admits no blocking pair: no node and center
//! that are not matched together both prefer each other, where both sides
//! rank by shortest-path distance with a shared tie-break ([`Score`]).
//!
//! Because preferences are symmetric the stable assignment is unique, so the
//! solvers in this crate all produce the same answer by different routes:
//!
//! * [`gale_shapley`] builds full preference tables and runs deferred
//!   acceptance with either side proposing.
//! * [`circle`] grows one Dijkstra search per center in a single merged
//!   queue and halts each search once its center is full.
//! * [`nnc`] runs a nearest-neighbor chain over pluggable dynamic
//!   nearest-neighbor oracles, and also holds the brute-force mutual
//!   closest pair reference solver.
//!
//! [`verify::verify_stable`] checks any assignment independently.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, timing, and
//! the command-line tool live in the `districts` companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod circle;
pub mod dijkstra;
pub mod gale_shapley;
pub mod graph;
pub mod grid;
pub mod memory;
pub mod model;
pub mod nnc;
pub mod rng;
pub mod score;
pub mod solve;
pub mod verify;

pub use dijkstra::{dijkstra, DistRow};
pub use graph::{GraphBuilder, GraphError, RoadGraph};
pub use memory::{MemoryBudget, MemoryRefused};
pub use model::{equal_quotas, Assignment, Instance, InstanceError};
pub use score::Score;
pub use solve::{solve, Algorithm, SolveError, Solution};
pub use verify::{verify_stable, BlockingPair, Verdict, VerifyError};
