//! Exact longest path by a bottom-up fold over the triangle recursion tree.
//!
//! Every face gets a table `profile -> most interior vertices covered`. A
//! leaf has only the empty profile. An internal face with apex `v` folds its
//! three children into a state over `{corners, v}`, chooses which of the
//! edges `v`-corner to use, then seals `v` as an interior vertex. At the
//! outer face the three sides are chosen and the trace must be one path.
//! Children always have larger ids than their parent, so a descending scan
//! over face ids is a valid post-order.

use super::profile::{Tables, ABSENT_PROFILE, ABSENT_STATE};
use super::{assemble_path, LongestPath};
use crate::ran::{FaceId, Ran, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Entry {
    profile: u8,
    covered: u32,
}

const LEAF_TABLE: [Entry; 1] = [Entry {
    profile: 0,
    covered: 0,
}];

const UNSET: u32 = u32::MAX;

/// One layer of the fold: best value per merge state, with the state and
/// child profile it came from.
struct Layer {
    best: Vec<u32>,
    from: Vec<(u16, u8)>,
    touched: Vec<u16>,
}

impl Layer {
    fn new(size: usize) -> Self {
        Layer {
            best: vec![UNSET; size],
            from: vec![(0, 0); size],
            touched: Vec::new(),
        }
    }

    fn clear(&mut self) {
        for &s in &self.touched {
            self.best[s as usize] = UNSET;
        }
        self.touched.clear();
    }

    #[inline]
    fn relax(&mut self, state: u16, value: u32, from: (u16, u8)) {
        let slot = &mut self.best[state as usize];
        if *slot == UNSET {
            self.touched.push(state);
            *slot = value;
            self.from[state as usize] = from;
        } else if value > *slot {
            *slot = value;
            self.from[state as usize] = from;
        }
    }
}

fn absorb_child(t: &Tables, prev: &Layer, next: &mut Layer, child: usize, entries: &[Entry]) {
    for &s in &prev.touched {
        let base = prev.best[s as usize];
        for e in entries {
            let s2 = t.fold(child, s, e.profile);
            if s2 != ABSENT_STATE {
                next.relax(s2, base + e.covered, (s, e.profile));
            }
        }
    }
}

/// How a face's best entry for one profile was obtained.
#[derive(Clone, Copy, Debug)]
struct Choice {
    child_profiles: [u8; 3],
    apex_mask: u8,
}

struct Merger {
    tables: &'static Tables,
    layers: [Layer; 3],
    out_best: Vec<u32>,
    out_from: Vec<(u16, u8)>,
}

impl Merger {
    fn new() -> Self {
        let tables = Tables::get();
        let ns = tables.states.len();
        let np = tables.profiles.len();
        Merger {
            tables,
            layers: [Layer::new(ns), Layer::new(ns), Layer::new(ns)],
            out_best: vec![UNSET; np],
            out_from: vec![(0, 0); np],
        }
    }

    /// Fill `out` with the table of a face whose children have `children`.
    fn merge(&mut self, children: [&[Entry]; 3], out: &mut Vec<Entry>) {
        let t = self.tables;
        for layer in &mut self.layers {
            layer.clear();
        }
        let [l0, l1, l2] = &mut self.layers;
        for e in children[0] {
            let s = t.fold(0, 0, e.profile);
            if s != ABSENT_STATE {
                l0.relax(s, e.covered, (0, e.profile));
            }
        }
        absorb_child(t, l0, l1, 1, children[1]);
        absorb_child(t, l1, l2, 2, children[2]);
        self.out_best.fill(UNSET);
        for &s in &l2.touched {
            let base = l2.best[s as usize];
            for mask in 0..8u8 {
                let (p, covered) = t.finish(s, mask);
                if p == ABSENT_PROFILE {
                    continue;
                }
                let value = base + covered as u32;
                let slot = &mut self.out_best[p as usize];
                if *slot == UNSET || value > *slot {
                    *slot = value;
                    self.out_from[p as usize] = (s, mask);
                }
            }
        }
        out.clear();
        for (p, &v) in self.out_best.iter().enumerate() {
            if v != UNSET {
                out.push(Entry {
                    profile: p as u8,
                    covered: v,
                });
            }
        }
    }

    /// After [`Merger::merge`], how the entry for `profile` was built.
    fn choice(&self, profile: u8) -> Choice {
        let (s2, apex_mask) = self.out_from[profile as usize];
        let (s1, p2) = self.layers[2].from[s2 as usize];
        let (s0, p1) = self.layers[1].from[s1 as usize];
        let (_, p0) = self.layers[0].from[s0 as usize];
        Choice {
            child_profiles: [p0, p1, p2],
            apex_mask,
        }
    }
}

/// Per-face tables for one instance.
struct Solved {
    start: Vec<u32>,
    len: Vec<u8>,
    arena: Vec<Entry>,
}

impl Solved {
    fn table(&self, face: FaceId) -> &[Entry] {
        let f = face as usize;
        match self.len[f] {
            0 => &LEAF_TABLE,
            len => &self.arena[self.start[f] as usize..self.start[f] as usize + len as usize],
        }
    }
}

fn solve_tables(ran: &Ran, merger: &mut Merger) -> Solved {
    let count = ran.node_count();
    let mut solved = Solved {
        start: vec![0; count],
        len: vec![0; count],
        arena: Vec::with_capacity(4 * ran.n()),
    };
    let mut scratch = Vec::with_capacity(64);
    for face in (0..count as FaceId).rev() {
        let Some(node) = ran.node(face) else { continue };
        let Some(children) = node.children else { continue };
        merger.merge(children.map(|c| solved.table(c)), &mut scratch);
        solved.start[face as usize] = solved.arena.len() as u32;
        solved.len[face as usize] = scratch.len() as u8;
        solved.arena.extend_from_slice(&scratch);
    }
    solved
}

/// Best (profile, side mask, value) at the outer face. Ties go to the
/// smallest profile, then the smallest mask.
fn best_root(solved: &Solved, tables: &Tables) -> (u8, u8, u32) {
    let mut best: Option<(u8, u8, u32)> = None;
    for e in solved.table(0) {
        for mask in 0..8u8 {
            if let Some(corners) = tables.root(e.profile, mask) {
                let value = e.covered + corners - 1;
                if best.is_none_or(|(_, _, b)| value > b) {
                    best = Some((e.profile, mask, value));
                }
            }
        }
    }
    best.expect("the outer triangle always has a two-edge path")
}

/// Length (in edges) of a longest path.
pub fn longest_path_length(ran: &Ran) -> usize {
    let mut merger = Merger::new();
    let solved = solve_tables(ran, &mut merger);
    best_root(&solved, merger.tables).2 as usize
}

/// Longest path with a witness, reconstructed top-down.
pub fn longest_path_exact(ran: &Ran) -> LongestPath {
    let mut merger = Merger::new();
    let solved = solve_tables(ran, &mut merger);
    let (root_profile, side_mask, length) = best_root(&solved, merger.tables);

    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(length as usize);
    for (j, (a, b)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        if side_mask & (1 << j) != 0 {
            edges.push((a, b));
        }
    }
    let mut scratch = Vec::with_capacity(64);
    let mut stack = vec![(0 as FaceId, root_profile)];
    while let Some((face, profile)) = stack.pop() {
        let node = ran.node(face).expect("face exists");
        let Some(children) = node.children else {
            debug_assert_eq!(profile, 0);
            continue;
        };
        let apex = node.apex.expect("internal face has an apex");
        merger.merge(children.map(|c| solved.table(c)), &mut scratch);
        let choice = merger.choice(profile);
        for j in 0..3 {
            if choice.apex_mask & (1 << j) != 0 {
                edges.push((apex, node.corners[j]));
            }
        }
        for (child, p) in children.into_iter().zip(choice.child_profiles) {
            if p != 0 {
                stack.push((child, p));
            }
        }
    }
    let path = assemble_path(ran.vertex_count(), &edges);
    debug_assert_eq!(path.len_edges(), length as usize);
    LongestPath {
        length: length as usize,
        path,
    }
}

/// Number of distinct profiles stored per internal face, for diagnostics.
pub fn table_size_histogram(ran: &Ran) -> Vec<usize> {
    let mut merger = Merger::new();
    let solved = solve_tables(ran, &mut merger);
    let mut hist = vec![0; merger.tables.profiles.len() + 1];
    for face in 0..ran.node_count() {
        if solved.len[face] > 0 {
            hist[solved.len[face] as usize] += 1;
        }
    }
    hist
}
