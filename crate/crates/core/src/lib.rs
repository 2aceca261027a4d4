//! Hamilton cycles in duals of even plane triangulations.
//!
//! The pipeline: analyse the multi-4-cycle structure of the hypothesis graph
//! `H = G[B1 ∪ B3] ∪ G[B2 ∪ B3]`, colour its vertices so that no cycle is
//! monochromatic, grow the colouring into seeds for a partition of `V(G)` into
//! two induced trees, and read the Hamilton cycle of `G*` off the cut.

pub mod colorizer;
pub mod embed;
pub mod error;
pub mod gen;
pub mod graph;
pub mod stein;
pub mod structure;
pub mod treesplit;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
