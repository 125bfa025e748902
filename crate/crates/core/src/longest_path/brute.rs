use super::{LongestPath, LongestPathError};
use crate::ran::{Adjacency, VertexId, VertexPath};

pub const BRUTE_FORCE_MAX_VERTICES: usize = 14;

/// Exhaustive DFS over every simple path. The first path found at the
/// maximum length (start vertices and neighbors in ascending order) is the
/// witness.
pub fn longest_path_bruteforce(adj: &Adjacency) -> Result<LongestPath, LongestPathError> {
    let count = adj.vertex_count();
    if count > BRUTE_FORCE_MAX_VERTICES {
        return Err(LongestPathError::TooLarge {
            vertices: count,
            limit: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    let mut best: Vec<VertexId> = Vec::new();
    let mut current = Vec::with_capacity(count);
    let mut on_path = vec![false; count];
    for start in 0..count as VertexId {
        current.push(start);
        on_path[start as usize] = true;
        extend(adj, &mut current, &mut on_path, &mut best);
        on_path[start as usize] = false;
        current.pop();
    }
    Ok(LongestPath {
        length: best.len().saturating_sub(1),
        path: VertexPath(best),
    })
}

fn extend(adj: &Adjacency, current: &mut Vec<VertexId>, on_path: &mut [bool], best: &mut Vec<VertexId>) {
    if current.len() > best.len() {
        best.clone_from(current);
    }
    let last = *current.last().unwrap();
    for &next in adj.neighbors(last) {
        if !on_path[next as usize] {
            on_path[next as usize] = true;
            current.push(next);
            extend(adj, current, on_path, best);
            current.pop();
            on_path[next as usize] = false;
        }
    }
}
