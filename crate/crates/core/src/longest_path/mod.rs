//! Longest simple paths (length counted in edges).

mod brute;
mod exact;
mod heuristic;
pub mod profile;

pub use brute::{longest_path_bruteforce, BRUTE_FORCE_MAX_VERTICES};
pub use exact::{longest_path_exact, longest_path_length, table_size_histogram};
pub use heuristic::heuristic_long_path;
pub use profile::{Partner, Profile};

use crate::ran::{Adjacency, VertexId, VertexPath};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LongestPathError {
    #[error("brute force is limited to {limit} vertices, instance has {vertices}")]
    TooLarge { vertices: usize, limit: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongestPath {
    pub length: usize,
    pub path: VertexPath,
}

/// True iff the vertices are distinct and consecutive ones adjacent.
pub fn validate_path(adj: &Adjacency, path: &VertexPath) -> bool {
    let vs = path.vertices();
    let mut seen = vec![false; adj.vertex_count()];
    for &v in vs {
        if v as usize >= seen.len() || std::mem::replace(&mut seen[v as usize], true) {
            return false;
        }
    }
    vs.windows(2).all(|w| adj.has_edge(w[0], w[1]))
}

/// Order the edges of a single path, starting from its smaller endpoint.
pub(crate) fn assemble_path(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> VertexPath {
    const NO: VertexId = VertexId::MAX;
    let mut next = vec![[NO; 2]; vertex_count];
    for &(a, b) in edges {
        for (u, w) in [(a, b), (b, a)] {
            let slot = &mut next[u as usize];
            let k = if slot[0] == NO { 0 } else { 1 };
            assert_eq!(slot[k], NO, "vertex {u} has degree above 2");
            slot[k] = w;
        }
    }
    let Some(start) = (0..vertex_count).find(|&v| next[v][0] != NO && next[v][1] == NO) else {
        return VertexPath(Vec::new());
    };
    let mut path = Vec::with_capacity(edges.len() + 1);
    let (mut prev, mut cur) = (NO, start as VertexId);
    loop {
        path.push(cur);
        let [a, b] = next[cur as usize];
        let step = if a != prev { a } else { b };
        if step == NO || step == prev {
            break;
        }
        prev = cur;
        cur = step;
    }
    assert_eq!(path.len(), edges.len() + 1, "edges do not form a single path");
    VertexPath(path)
}
