//! Random Apollonian networks and their triangle recursion tree.
//!
//! Vertex ids: the outer triangle is `0, 1, 2`; the vertex inserted at step
//! `i` (1-based) has id `i + 2`.
//!
//! Face ids: the outer triangle is face `0`. Step `i` subdivides face `c_i`
//! into faces `3i - 2`, `3i - 1`, `3i`, where child `t` keeps the parent's
//! sorted corners minus position `t` and appends the apex. Because the apex is
//! always the newest (largest) vertex id, children stay sorted with the apex
//! in the last slot, and every child id is larger than its parent's.

mod adjacency;
mod format;
mod projection;

pub use adjacency::Adjacency;
pub use format::{RanFile, FORMAT_TAG};

use crate::rng::{self, SimRng};
use thiserror::Error;

pub type VertexId = u32;
pub type FaceId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RanError {
    #[error("choice {index} refers to face {face}, which is not a leaf at that step")]
    InvalidChoice { index: usize, face: u64 },
    #[error("sigma {sigma} exceeds the number of insertions {n}")]
    SigmaOutOfRange { sigma: usize, n: usize },
    #[error("face {0} does not exist")]
    NoSuchFace(FaceId),
    #[error("invalid path at position {position}: {reason}")]
    InvalidPath { position: usize, reason: String },
    #[error("malformed ran file at line {line}, column {column}: {message}")]
    Malformed { line: usize, column: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct NodeRecord {
    corners: [VertexId; 3],
    /// Step that subdivided this face, 0 while it is a leaf.
    split: u32,
}

/// One face of the recursion tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangleNode {
    pub id: FaceId,
    pub corners: [VertexId; 3],
    pub apex: Option<VertexId>,
    pub children: Option<[FaceId; 3]>,
}

/// Full history of a random Apollonian network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ran {
    choices: Vec<FaceId>,
    nodes: Vec<NodeRecord>,
}

/// Step (1-based) at which face `face` was created; 0 for the outer face.
#[inline]
pub fn creation_step(face: FaceId) -> usize {
    (face as usize).div_ceil(3)
}

#[inline]
fn child_ids(step: usize) -> [FaceId; 3] {
    let base = (3 * step - 2) as FaceId;
    [base, base + 1, base + 2]
}

impl Ran {
    fn bare(capacity: usize) -> Self {
        let mut nodes = Vec::with_capacity(3 * capacity + 1);
        nodes.push(NodeRecord {
            corners: [0, 1, 2],
            split: 0,
        });
        Ran {
            choices: Vec::with_capacity(capacity),
            nodes,
        }
    }

    /// Subdivide `face` with the next vertex. `face` must be a leaf.
    fn subdivide(&mut self, face: FaceId) {
        let step = self.choices.len() + 1;
        let apex = (step + 2) as VertexId;
        let record = &mut self.nodes[face as usize];
        debug_assert_eq!(record.split, 0);
        record.split = step as u32;
        let [a, b, c] = record.corners;
        self.nodes.push(NodeRecord {
            corners: [b, c, apex],
            split: 0,
        });
        self.nodes.push(NodeRecord {
            corners: [a, c, apex],
            split: 0,
        });
        self.nodes.push(NodeRecord {
            corners: [a, b, apex],
            split: 0,
        });
        self.choices.push(face);
    }

    /// Grow a network with `n` insertions from `seed`.
    pub fn generate(n: usize, seed: u64) -> Self {
        let mut rng = rng::stream_rng(seed, rng::GENERATE_STREAM);
        let mut ran = Ran::bare(n);
        ran.grow(n, &mut rng);
        ran
    }

    /// Continue this network by `extra` further uniform insertions.
    pub fn extend(&self, extra: usize, rng: &mut SimRng) -> Self {
        let mut ran = self.clone();
        ran.choices.reserve(extra);
        ran.nodes.reserve(3 * extra);
        ran.grow(extra, rng);
        ran
    }

    fn grow(&mut self, extra: usize, rng: &mut SimRng) {
        // Dense list of the current leaves; the chosen slot is overwritten by
        // the first child and the other two are appended.
        let mut leaves = self.leaves();
        leaves.reserve(2 * extra);
        for _ in 0..extra {
            let slot = rng::uniform_index(rng, leaves.len());
            let face = leaves[slot];
            let [c0, c1, c2] = child_ids(self.choices.len() + 1);
            self.subdivide(face);
            leaves[slot] = c0;
            leaves.push(c1);
            leaves.push(c2);
        }
    }

    /// Replay a choice sequence under the canonical face-id rule.
    pub fn from_choices(choices: &[FaceId]) -> Result<Self, RanError> {
        let mut ran = Ran::bare(choices.len());
        for (index, &face) in choices.iter().enumerate() {
            match ran.nodes.get(face as usize) {
                Some(record) if record.split == 0 => ran.subdivide(face),
                _ => {
                    return Err(RanError::InvalidChoice {
                        index,
                        face: face as u64,
                    })
                }
            }
        }
        Ok(ran)
    }

    /// Number of inserted vertices.
    pub fn n(&self) -> usize {
        self.choices.len()
    }

    pub fn choices(&self) -> &[FaceId] {
        &self.choices
    }

    pub fn vertex_count(&self) -> usize {
        self.n() + 3
    }

    /// Each insertion adds three edges to the outer triangle's three.
    pub fn edge_count(&self) -> usize {
        3 * self.n() + 3
    }

    /// Number of leaf (active) faces.
    pub fn face_count(&self) -> usize {
        2 * self.n() + 1
    }

    /// Total number of recursion-tree nodes, leaves included.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, face: FaceId) -> Option<TriangleNode> {
        let record = self.nodes.get(face as usize)?;
        let split = record.split as usize;
        Some(TriangleNode {
            id: face,
            corners: record.corners,
            apex: (split != 0).then(|| (split + 2) as VertexId),
            children: (split != 0).then(|| child_ids(split)),
        })
    }

    pub fn nodes(&self) -> impl Iterator<Item = TriangleNode> + '_ {
        (0..self.nodes.len() as FaceId).map(|f| self.node(f).expect("in range"))
    }

    #[inline]
    pub(crate) fn corners(&self, face: FaceId) -> [VertexId; 3] {
        self.nodes[face as usize].corners
    }

    /// Step that subdivided `face`, if any.
    #[inline]
    pub(crate) fn split_step(&self, face: FaceId) -> Option<usize> {
        match self.nodes[face as usize].split {
            0 => None,
            s => Some(s as usize),
        }
    }

    /// Current leaf faces, ascending.
    pub fn leaves(&self) -> Vec<FaceId> {
        self.leaves_at(self.n())
    }

    /// Leaf faces of the prefix after `sigma` insertions, ascending.
    pub fn leaves_at(&self, sigma: usize) -> Vec<FaceId> {
        let sigma = sigma.min(self.n());
        (0..=3 * sigma as FaceId)
            .filter(|&f| self.is_leaf_at(f, sigma))
            .collect()
    }

    /// Whether `face` exists and is unsplit after `sigma` insertions.
    pub fn is_leaf_at(&self, face: FaceId, sigma: usize) -> bool {
        if creation_step(face) > sigma || face as usize >= self.nodes.len() {
            return false;
        }
        match self.nodes[face as usize].split {
            0 => true,
            s => s as usize > sigma,
        }
    }

    /// Parent face, `None` for the outer face.
    pub fn parent(&self, face: FaceId) -> Option<FaceId> {
        match creation_step(face) {
            0 => None,
            step => Some(self.choices[step - 1]),
        }
    }

    /// Face that vertex `v` was inserted into (`None` for outer corners).
    pub fn insertion_face(&self, v: VertexId) -> Option<FaceId> {
        (v >= 3).then(|| self.choices[v as usize - 3])
    }

    /// O(1) adjacency test on the full network.
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        if lo == hi || hi as usize >= self.vertex_count() {
            return false;
        }
        match self.insertion_face(hi) {
            None => true,
            Some(face) => self.corners(face).contains(&lo),
        }
    }

    /// Leaf face of the `sigma`-prefix whose interior holds `v`, or `None`
    /// when `v` already belongs to that prefix.
    pub fn containing_face(&self, v: VertexId, sigma: usize) -> Option<FaceId> {
        if (v as usize) < sigma + 3 {
            return None;
        }
        let mut face = self.insertion_face(v)?;
        while creation_step(face) > sigma {
            face = self.parent(face).expect("non-root face has a parent");
        }
        Some(face)
    }

    /// The network after its first `sigma` insertions.
    pub fn prefix(&self, sigma: usize) -> Result<Ran, RanError> {
        if sigma > self.n() {
            return Err(RanError::SigmaOutOfRange {
                sigma,
                n: self.n(),
            });
        }
        Ok(Ran::from_choices(&self.choices[..sigma]).expect("prefix of a valid history"))
    }

    /// For each leaf of the `sigma`-prefix (ascending), how many of the
    /// insertions `sigma + 1 ..= horizon` landed inside it.
    pub fn leaf_occupancies(
        &self,
        sigma: usize,
        horizon: usize,
    ) -> Result<Vec<(FaceId, u64)>, RanError> {
        let labels = self.leaf_labels(sigma, horizon)?;
        let leaves = self.leaves_at(sigma);
        let mut counts = vec![0u64; leaves.len()];
        for step in sigma + 1..=horizon {
            counts[labels[self.choices[step - 1] as usize] as usize] += 1;
        }
        Ok(leaves.into_iter().zip(counts).collect())
    }

    /// Label every face created up to `horizon` with the index (into
    /// `leaves_at(sigma)`) of the `sigma`-leaf it descends from. Faces that are
    /// internal at `sigma` get `u32::MAX`.
    pub(crate) fn leaf_labels(&self, sigma: usize, horizon: usize) -> Result<Vec<u32>, RanError> {
        if horizon > self.n() || sigma > horizon {
            return Err(RanError::SigmaOutOfRange {
                sigma: sigma.max(horizon),
                n: self.n(),
            });
        }
        let mut labels = vec![u32::MAX; 3 * horizon + 1];
        let mut next = 0u32;
        for face in 0..=3 * sigma as FaceId {
            if self.is_leaf_at(face, sigma) {
                labels[face as usize] = next;
                next += 1;
            }
        }
        for step in sigma + 1..=horizon {
            let label = labels[self.choices[step - 1] as usize];
            for child in child_ids(step) {
                labels[child as usize] = label;
            }
        }
        Ok(labels)
    }

    /// The network formed by face `face` and every vertex inserted inside it
    /// up to step `horizon`, relabelled as a standalone instance (corners
    /// become `0, 1, 2` in sorted order).
    pub fn subinstance(&self, face: FaceId, horizon: usize) -> Result<Ran, RanError> {
        if face as usize >= self.nodes.len() || creation_step(face) > horizon {
            return Err(RanError::NoSuchFace(face));
        }
        if horizon > self.n() {
            return Err(RanError::SigmaOutOfRange {
                sigma: horizon,
                n: self.n(),
            });
        }
        let mut steps = Vec::new();
        let mut stack = vec![face];
        while let Some(f) = stack.pop() {
            if let Some(step) = self.split_step(f) {
                if step <= horizon {
                    steps.push(step);
                    stack.extend(child_ids(step));
                }
            }
        }
        steps.sort_unstable();
        let mut local = std::collections::HashMap::with_capacity(3 * steps.len() + 1);
        local.insert(face, 0 as FaceId);
        let mut choices = Vec::with_capacity(steps.len());
        for (k, &step) in steps.iter().enumerate() {
            let parent = self.choices[step - 1];
            choices.push(local[&parent]);
            for (global, mine) in child_ids(step).into_iter().zip(child_ids(k + 1)) {
                local.insert(global, mine);
            }
        }
        Ran::from_choices(&choices)
    }
}

/// A simple path given by its vertex sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexPath(pub Vec<VertexId>);

impl VertexPath {
    pub fn new(vertices: Vec<VertexId>) -> Self {
        VertexPath(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    /// Length in edges; 0 for the empty path.
    pub fn len_edges(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Check distinctness and adjacency against the full network.
    pub fn check_in(&self, ran: &Ran) -> Result<(), RanError> {
        let mut seen = std::collections::HashSet::with_capacity(self.0.len());
        for (position, &v) in self.0.iter().enumerate() {
            if v as usize >= ran.vertex_count() {
                return Err(RanError::InvalidPath {
                    position,
                    reason: format!("vertex {v} does not exist"),
                });
            }
            if !seen.insert(v) {
                return Err(RanError::InvalidPath {
                    position,
                    reason: format!("vertex {v} repeated"),
                });
            }
            if position > 0 && !ran.has_edge(self.0[position - 1], v) {
                return Err(RanError::InvalidPath {
                    position,
                    reason: format!("{} and {v} are not adjacent", self.0[position - 1]),
                });
            }
        }
        Ok(())
    }
}

impl From<Vec<VertexId>> for VertexPath {
    fn from(v: Vec<VertexId>) -> Self {
        VertexPath(v)
    }
}
