//! Boundary states of a path trace restricted to one triangle region.
//!
//! A region is a face of the recursion tree together with every vertex
//! inserted inside it. Its *inner edges* are those with at least one interior
//! endpoint; the three sides belong to the enclosing region. The restriction
//! of a global path to the inner edges is a linear forest, summarised by:
//!
//! * the trace degree (0, 1 or 2) of each boundary slot,
//! * for each degree-1 slot, the far end of its segment: another slot or a
//!   *loose* end (an interior vertex, hence a global endpoint),
//! * whether a segment with two loose ends exists (`closed`); that segment is
//!   then the whole path, so no slot may be an endpoint.
//!
//! Slots `0..3` are the region corners in sorted order. During a merge a
//! fourth slot holds the apex.

use std::collections::HashMap;
use std::sync::OnceLock;

pub(crate) const LOOSE: u8 = 4;
pub(crate) const NONE: u8 = 5;
const SLOTS: usize = 4;

/// Far end of a corner's trace segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Partner {
    /// Degree 0 or 2: not a segment end.
    None,
    Corner(usize),
    /// An interior vertex, necessarily an endpoint of the whole path.
    Loose,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Boundary {
    deg: [u8; SLOTS],
    mate: [u8; SLOTS],
    closed: u8,
}

/// A three-corner boundary state: the DP alphabet.
pub type Profile = Boundary;

impl Boundary {
    pub const EMPTY: Boundary = Boundary {
        deg: [0; SLOTS],
        mate: [NONE; SLOTS],
        closed: 0,
    };

    pub fn corner_degree(&self, corner: usize) -> u8 {
        self.deg[corner]
    }

    pub fn partner(&self, corner: usize) -> Partner {
        match self.mate[corner] {
            NONE => Partner::None,
            LOOSE => Partner::Loose,
            m => Partner::Corner(m as usize),
        }
    }

    /// Trace endpoints strictly inside the region.
    pub fn loose_ends(&self) -> u8 {
        self.mate.iter().filter(|&&m| m == LOOSE).count() as u8 + 2 * self.closed
    }

    pub fn has_closed_segment(&self) -> bool {
        self.closed > 0
    }

    fn is_valid(&self) -> bool {
        if self.closed > 1 || self.loose_ends() > 2 {
            return false;
        }
        if self.closed == 1 && self.deg.contains(&1) {
            return false;
        }
        for s in 0..SLOTS {
            let consistent = match (self.deg[s], self.mate[s]) {
                (0 | 2, m) => m == NONE,
                (1, LOOSE) => true,
                (1, m) if (m as usize) < SLOTS => {
                    m as usize != s && self.deg[m as usize] == 1 && self.mate[m as usize] as usize == s
                }
                _ => false,
            };
            if !consistent {
                return false;
            }
        }
        true
    }

    /// Join a new segment `a .. b` (`b` may be [`LOOSE`]) into the trace.
    fn add_segment(&mut self, a: u8, b: u8) -> bool {
        let (ai, bi) = (a as usize, b as usize);
        if self.deg[ai] == 2 {
            return false;
        }
        let far_a = if self.deg[ai] == 0 { a } else { self.mate[ai] };
        let far_b = if b == LOOSE {
            LOOSE
        } else {
            if self.deg[bi] == 2 || (self.deg[ai] == 1 && self.mate[ai] == b) {
                return false;
            }
            if self.deg[bi] == 0 {
                b
            } else {
                self.mate[bi]
            }
        };
        self.deg[ai] += 1;
        if self.deg[ai] == 2 {
            self.mate[ai] = NONE;
        }
        if b != LOOSE {
            self.deg[bi] += 1;
            if self.deg[bi] == 2 {
                self.mate[bi] = NONE;
            }
        }
        match (far_a, far_b) {
            (LOOSE, LOOSE) => self.closed += 1,
            (LOOSE, f) | (f, LOOSE) => self.mate[f as usize] = LOOSE,
            (x, y) => {
                self.mate[x as usize] = y;
                self.mate[y as usize] = x;
            }
        }
        true
    }

    /// Merge a child region's profile whose corner `i` is slot `map[i]` here.
    fn absorb(&self, child: &Boundary, map: [u8; 3]) -> Option<Boundary> {
        let mut next = *self;
        for i in 0..3 {
            match child.deg[i] {
                2 => {
                    let slot = map[i] as usize;
                    if next.deg[slot] != 0 {
                        return None;
                    }
                    next.deg[slot] = 2;
                }
                #[allow(clippy::collapsible_match)]
                1 => match child.mate[i] {
                    LOOSE => {
                        if !next.add_segment(map[i], LOOSE) {
                            return None;
                        }
                    }
                    m if (m as usize) > i => {
                        if !next.add_segment(map[i], map[m as usize]) {
                            return None;
                        }
                    }
                    _ => {}
                },
                _ => {}
            }
        }
        next.closed += child.closed;
        next.is_valid().then_some(next)
    }

    /// Add apex edges `3 - j` for each bit `j` of `mask`, then make the apex
    /// (slot 3) interior. Returns the corner profile and whether the apex is
    /// on the trace.
    fn seal_apex(&self, mask: u8) -> Option<(Boundary, bool)> {
        let mut next = *self;
        for j in 0..3u8 {
            if mask & (1 << j) != 0 && !next.add_segment(3, j) {
                return None;
            }
        }
        let covered = next.deg[3] > 0;
        if next.deg[3] == 1 {
            match next.mate[3] {
                LOOSE => next.closed += 1,
                m => next.mate[m as usize] = LOOSE,
            }
        }
        next.deg[3] = 0;
        next.mate[3] = NONE;
        next.is_valid().then_some((next, covered))
    }

    /// Close the outer triangle with the sides in `mask` (bit 0: 0-1, bit 1:
    /// 0-2, bit 2: 1-2). On success returns the number of corners on the
    /// path, provided the trace is a single path.
    fn seal_root(&self, mask: u8) -> Option<u32> {
        const SIDES: [(u8, u8); 3] = [(0, 1), (0, 2), (1, 2)];
        let mut next = *self;
        for (j, &(a, b)) in SIDES.iter().enumerate() {
            if mask & (1 << j) != 0 && !next.add_segment(a, b) {
                return None;
            }
        }
        if !next.is_valid() {
            return None;
        }
        let mut components = next.closed as usize;
        for s in 0..3 {
            match next.mate[s] {
                LOOSE => components += 1,
                m if (m as usize) < SLOTS && (m as usize) > s => components += 1,
                _ => {}
            }
        }
        (components == 1).then(|| next.deg[..3].iter().filter(|&&d| d > 0).count() as u32)
    }
}

/// Slot of child `t`'s corners inside the merge state: the parent corners
/// other than position `t`, then the apex.
pub(crate) const CHILD_SLOTS: [[u8; 3]; 3] = [[1, 2, 3], [0, 2, 3], [0, 1, 3]];

pub(crate) const ABSENT_STATE: u16 = u16::MAX;
pub(crate) const ABSENT_PROFILE: u8 = u8::MAX;

/// Transition tables over the finite state alphabets.
pub(crate) struct Tables {
    pub profiles: Vec<Profile>,
    pub states: Vec<Boundary>,
    /// `fold[(t * states + s) * profiles + p]`: state after absorbing
    /// profile `p` as child `t` into state `s`.
    fold: Vec<u16>,
    /// `finish[s * 8 + mask]`: (profile, apex covered) after sealing.
    finish: Vec<(u8, bool)>,
    /// `root[p * 8 + mask]`: covered corners when the outer triangle closes
    /// to a single path.
    root: Vec<Option<u32>>,
}

impl Tables {
    fn build() -> Tables {
        let profiles = enumerate_profiles();
        let mut states = vec![Boundary::EMPTY];
        let mut index: HashMap<Boundary, u16> = HashMap::from([(Boundary::EMPTY, 0)]);
        let mut cursor = 0;
        while cursor < states.len() {
            let s = states[cursor];
            cursor += 1;
            for map in CHILD_SLOTS {
                for p in &profiles {
                    if let Some(next) = s.absorb(p, map) {
                        index.entry(next).or_insert_with(|| {
                            states.push(next);
                            (states.len() - 1) as u16
                        });
                    }
                }
            }
        }
        let profile_index: HashMap<Boundary, u8> =
            profiles.iter().enumerate().map(|(i, p)| (*p, i as u8)).collect();

        let (ns, np) = (states.len(), profiles.len());
        let mut fold = vec![ABSENT_STATE; 3 * ns * np];
        for (t, map) in CHILD_SLOTS.iter().enumerate() {
            for (si, s) in states.iter().enumerate() {
                for (pi, p) in profiles.iter().enumerate() {
                    if let Some(next) = s.absorb(p, *map) {
                        fold[(t * ns + si) * np + pi] = index[&next];
                    }
                }
            }
        }
        let mut finish = vec![(ABSENT_PROFILE, false); ns * 8];
        for (si, s) in states.iter().enumerate() {
            for mask in 0..8u8 {
                if let Some((p, covered)) = s.seal_apex(mask) {
                    finish[si * 8 + mask as usize] = (profile_index[&p], covered);
                }
            }
        }
        let mut root = vec![None; np * 8];
        for (pi, p) in profiles.iter().enumerate() {
            for mask in 0..8u8 {
                root[pi * 8 + mask as usize] = p.seal_root(mask);
            }
        }
        Tables {
            profiles,
            states,
            fold,
            finish,
            root,
        }
    }

    pub fn get() -> &'static Tables {
        static TABLES: OnceLock<Tables> = OnceLock::new();
        TABLES.get_or_init(Tables::build)
    }

    #[inline]
    pub fn fold(&self, child: usize, state: u16, profile: u8) -> u16 {
        self.fold[(child * self.states.len() + state as usize) * self.profiles.len() + profile as usize]
    }

    #[inline]
    pub fn finish(&self, state: u16, mask: u8) -> (u8, bool) {
        self.finish[state as usize * 8 + mask as usize]
    }

    #[inline]
    pub fn root(&self, profile: u8, mask: u8) -> Option<u32> {
        self.root[profile as usize * 8 + mask as usize]
    }
}

/// Every valid three-corner profile, sorted; `EMPTY` comes first.
fn enumerate_profiles() -> Vec<Profile> {
    let mut out = Vec::new();
    for code in 0..27u32 {
        let deg = [(code % 3) as u8, (code / 3 % 3) as u8, (code / 9) as u8, 0];
        let ends: Vec<usize> = (0..3).filter(|&s| deg[s] == 1).collect();
        // Each endpoint picks a partner: another endpoint or loose.
        let choices = ends.len() + 1;
        for pick in 0..choices.pow(ends.len() as u32) {
            let mut mate = [NONE; SLOTS];
            let mut rest = pick;
            for &s in &ends {
                let c = rest % choices;
                rest /= choices;
                mate[s] = if c == ends.len() { LOOSE } else { ends[c] as u8 };
            }
            for closed in 0..2 {
                let b = Boundary { deg, mate, closed };
                if b.is_valid() {
                    out.push(b);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}
