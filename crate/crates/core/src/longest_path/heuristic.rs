//! Constructive long path by corner-to-corner routing.
//!
//! `yield(face, x, y)` is the most vertices on a path from corner `x` to
//! corner `y` that stays inside the face and avoids its third corner `z`.
//! With apex `v` such a path is either the side `x y`, or `x .. v` inside one
//! child followed by `v .. y` inside another. The three usable child pairs
//! are (avoid y, avoid x), (avoid z, avoid x) and (avoid y, avoid z), where
//! "avoid c" names the child missing corner `c`. A final path takes the best
//! corner pair of the outer face and appends the remaining corner.

use crate::ran::{FaceId, Ran, VertexId, VertexPath};

/// `yields[face][z]`: best vertex count between the two corners other than
/// sorted position `z`.
fn corner_yields(ran: &Ran) -> Vec<[u32; 3]> {
    let mut yields = vec![[2u32; 3]; ran.node_count()];
    for face in (0..ran.node_count() as FaceId).rev() {
        let node = ran.node(face).expect("in range");
        if let Some(children) = node.children {
            let mut row = [0; 3];
            for (z, slot) in row.iter_mut().enumerate() {
                let (x, y) = other_two(z);
                *slot = best_option(&yields, children, x, y, z).0;
            }
            yields[face as usize] = row;
        }
    }
    yields
}

fn other_two(z: usize) -> (usize, usize) {
    match z {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Position of parent corner `q` inside child `t` (the child drops `t`).
fn pos_in_child(q: usize, t: usize) -> usize {
    debug_assert_ne!(q, t);
    if q < t {
        q
    } else {
        q - 1
    }
}

/// Yield of a corner-to-apex route inside child `t` from parent corner `q`,
/// avoiding the child's other parent corner.
fn to_apex(yields: &[[u32; 3]], children: [FaceId; 3], t: usize, q: usize) -> u32 {
    // Child corners are (two parent corners, apex at position 2); the one to
    // avoid is the parent corner that is neither q nor t.
    let avoid = 3 - q - t;
    yields[children[t] as usize][pos_in_child(avoid, t)]
}

/// Best option for a route from parent corner `x` to `y` avoiding `z`:
/// (vertex count, option). Option 0 is the side itself; 1..=3 are the child
/// pairs (first leg child, second leg child).
fn best_option(yields: &[[u32; 3]], children: [FaceId; 3], x: usize, y: usize, z: usize) -> (u32, usize) {
    let legs = [(y, x), (z, x), (y, z)];
    let mut best = (2, 0);
    for (k, &(first, second)) in legs.iter().enumerate() {
        let total = to_apex(yields, children, first, x) + to_apex(yields, children, second, y) - 1;
        if total > best.0 {
            best = (total, k + 1);
        }
    }
    best
}

/// Long (not necessarily longest) path built from the corner-route
/// recursion in linear time.
pub fn heuristic_long_path(ran: &Ran) -> VertexPath {
    let yields = corner_yields(ran);
    let root = yields[0];
    let z = (0..3).max_by_key(|&z| (root[z], std::cmp::Reverse(z))).unwrap();
    let (x, y) = other_two(z);

    // Route segments are expanded depth-first; each segment emits its start
    // vertex once it reaches a side, and the final endpoint is added last.
    let mut vertices = Vec::with_capacity(root[z] as usize + 1);
    let mut stack: Vec<(FaceId, VertexId, VertexId)> = vec![(0, x as VertexId, y as VertexId)];
    while let Some((face, from, to)) = stack.pop() {
        let node = ran.node(face).expect("in range");
        let Some(children) = node.children else {
            vertices.push(from);
            continue;
        };
        let pos = |v: VertexId| node.corners.iter().position(|&c| c == v).unwrap();
        let (px, py) = (pos(from), pos(to));
        let pz = 3 - px - py;
        let (_, option) = best_option(&yields, children, px, py, pz);
        if option == 0 {
            vertices.push(from);
            continue;
        }
        let apex = node.apex.unwrap();
        let (first, second) = [(py, px), (pz, px), (py, pz)][option - 1];
        stack.push((children[second], apex, to));
        stack.push((children[first], from, apex));
    }
    vertices.push(y as VertexId);
    vertices.push(z as VertexId);
    VertexPath(vertices)
}
