//! Random Apollonian networks: generation, exact longest paths by profile
//! dynamic programming, face-occupancy laws, and the round-decomposition
//! analysis built on top of them.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod longest_path;
pub mod occupancy;
pub mod ran;
pub mod rng;

pub use ran::{Adjacency, FaceId, Ran, RanError, TriangleNode, VertexId, VertexPath};
