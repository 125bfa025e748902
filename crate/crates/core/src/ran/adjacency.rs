use super::{Ran, VertexId};

/// Compressed neighbor lists, each sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
}

impl Adjacency {
    /// Build from an undirected edge list over `vertex_count` vertices.
    pub fn from_edges(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Self {
        let mut degree = vec![0usize; vertex_count];
        for &(u, v) in edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(vertex_count + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..vertex_count].to_vec();
        let mut targets = vec![0; offsets[vertex_count]];
        for &(u, v) in edges {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for v in 0..vertex_count {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Adjacency { offsets, targets }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        (u as usize) < self.vertex_count() && self.neighbors(u).binary_search(&v).is_ok()
    }
}

impl Ran {
    /// Undirected edge list: the outer triangle, then three edges per step.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut edges = Vec::with_capacity(self.edge_count());
        edges.extend([(0, 1), (0, 2), (1, 2)]);
        for (i, &face) in self.choices().iter().enumerate() {
            let apex = (i + 3) as VertexId;
            for corner in self.corners(face) {
                edges.push((corner, apex));
            }
        }
        edges
    }

    pub fn adjacency(&self) -> Adjacency {
        Adjacency::from_edges(self.vertex_count(), &self.edges())
    }
}
