//! Combinatorial 4-valent diagrams.
//!
//! A crossing has four slots in counterclockwise order. Slot 0 is where the
//! first strand enters and slot 2 where it leaves; for a classical crossing the
//! first strand is the understrand. The second strand enters at `second_in`
//! (1 or 3) and leaves at the opposite slot. Each slot is linked to exactly one
//! other slot, and a link always joins an outgoing slot to an incoming one, so
//! orientation is carried by the slot roles rather than stored per edge.
//!
//! With this layout a classical crossing is positive exactly when the
//! overstrand enters at slot 3, and the A-smoothing always pairs slots
//! `(0,1)(2,3)`. The unit test `positive_kink_calibration` in `bracket` pins
//! this against the curl identity.

mod codec;
mod embed;
pub mod moves;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use codec::{parse_braid, Format};

/// One of the four slots of a crossing.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Arm {
    pub crossing: usize,
    pub slot: u8,
}

impl Arm {
    pub fn new(crossing: usize, slot: u8) -> Self {
        Self { crossing, slot }
    }

    /// The slot across the crossing, where the same strand continues.
    pub fn opposite(self) -> Self {
        Self::new(self.crossing, (self.slot + 2) % 4)
    }

    /// Next slot counterclockwise.
    pub fn ccw(self, k: u8) -> Self {
        Self::new(self.crossing, (self.slot + k) % 4)
    }

    fn index(self) -> usize {
        self.crossing * 4 + self.slot as usize
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossingKind {
    Classical,
    Virtual,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Crossing {
    pub kind: CrossingKind,
    /// Slot where the second (over) strand enters: 1 or 3.
    pub second_in: u8,
    /// `links[s]` is the slot joined to slot `s`.
    pub links: [Arm; 4],
}

impl Crossing {
    pub fn is_virtual(&self) -> bool {
        self.kind == CrossingKind::Virtual
    }

    pub fn is_incoming(&self, slot: u8) -> bool {
        slot == 0 || slot == self.second_in
    }

    /// +1 / -1 for classical crossings, 0 for virtual ones.
    pub fn sign(&self) -> i64 {
        match (self.kind, self.second_in) {
            (CrossingKind::Virtual, _) => 0,
            (_, 3) => 1,
            _ => -1,
        }
    }

    /// Whether the strand through `slot` is the overstrand (classical only).
    pub fn is_over(&self, slot: u8) -> bool {
        slot % 2 == 1
    }
}

/// The two planar reconnections of a classical crossing.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Smoothing {
    A,
    B,
}

impl Smoothing {
    pub fn pairs(self) -> [(u8, u8); 2] {
        match self {
            Smoothing::A => [(0, 1), (2, 3)],
            Smoothing::B => [(0, 3), (1, 2)],
        }
    }
}

pub(crate) const PASS: [(u8, u8); 2] = [(0, 2), (1, 3)];

/// A knot or link diagram, possibly with virtual crossings.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    /// Components with no crossings at all.
    free_loops: usize,
    #[serde(default = "default_true")]
    oriented: bool,
}

fn default_true() -> bool {
    true
}

/// Result of smoothing every classical crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    pub choice: BTreeMap<usize, Smoothing>,
    /// Each loop as the sorted list of arms it passes through.
    pub loops: Vec<Vec<Arm>>,
    pub loop_count: usize,
}

impl Diagram {
    /// Builds a diagram after checking link symmetry and orientation.
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self> {
        let d = Self { crossings, free_loops, oriented: true };
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn new_unchecked(crossings: Vec<Crossing>, free_loops: usize) -> Self {
        let d = Self { crossings, free_loops, oriented: true };
        debug_assert!(d.validate().is_ok(), "{:?}", d.validate());
        d
    }

    /// The round unknot.
    pub fn unknot() -> Self {
        Self { crossings: Vec::new(), free_loops: 1, oriented: true }
    }

    pub fn empty() -> Self {
        Self { crossings: Vec::new(), free_loops: 0, oriented: true }
    }

    fn validate(&self) -> Result<()> {
        let n = self.crossings.len();
        let bad = |m: String| Err(Error::InconsistentCode(m));
        for (c, x) in self.crossings.iter().enumerate() {
            if x.second_in != 1 && x.second_in != 3 {
                return bad(format!("crossing {c}: second_in must be 1 or 3"));
            }
            for s in 0..4u8 {
                let t = x.links[s as usize];
                if t.crossing >= n || t.slot > 3 {
                    return bad(format!("crossing {c} slot {s}: link out of range"));
                }
                if t == Arm::new(c, s) {
                    return bad(format!("crossing {c} slot {s} linked to itself"));
                }
                if self.link(t) != Arm::new(c, s) {
                    return bad(format!("crossing {c} slot {s}: link is not symmetric"));
                }
                if self.oriented && x.is_incoming(s) == self.crossings[t.crossing].is_incoming(t.slot) {
                    return bad(format!("crossing {c} slot {s}: edge joins two {} ends", if x.is_incoming(s) { "incoming" } else { "outgoing" }));
                }
            }
        }
        Ok(())
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn classical_count(&self) -> usize {
        self.crossings.iter().filter(|c| !c.is_virtual()).count()
    }

    pub fn virtual_count(&self) -> usize {
        self.crossings.len() - self.classical_count()
    }

    /// Indices of the classical crossings, in order.
    pub fn classical_indices(&self) -> Vec<usize> {
        (0..self.crossings.len()).filter(|&c| !self.crossings[c].is_virtual()).collect()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn is_oriented(&self) -> bool {
        self.oriented
    }

    /// Marks the orientation as meaningless (bracket-only use).
    pub fn forget_orientation(mut self) -> Self {
        self.oriented = false;
        self
    }

    pub fn link(&self, a: Arm) -> Arm {
        self.crossings[a.crossing].links[a.slot as usize]
    }

    pub fn is_incoming(&self, a: Arm) -> bool {
        self.crossings[a.crossing].is_incoming(a.slot)
    }

    pub fn is_classical(&self) -> bool {
        self.crossings.iter().all(|c| !c.is_virtual())
    }

    pub fn writhe(&self) -> Result<i64> {
        if !self.oriented {
            return Err(Error::Unoriented);
        }
        Ok(self.crossings.iter().map(Crossing::sign).sum())
    }

    /// Counts of positive and negative classical crossings.
    pub fn signed_counts(&self) -> (usize, usize) {
        let pos = self.crossings.iter().filter(|c| c.sign() > 0).count();
        let neg = self.crossings.iter().filter(|c| c.sign() < 0).count();
        (pos, neg)
    }

    /// Outgoing arms in index order; edge `i` runs from `edge_tails()[i]` to its link.
    pub fn edge_tails(&self) -> Vec<Arm> {
        let mut out = Vec::with_capacity(self.crossings.len() * 2);
        for (c, x) in self.crossings.iter().enumerate() {
            for s in 0..4u8 {
                if !x.is_incoming(s) {
                    out.push(Arm::new(c, s));
                }
            }
        }
        out
    }

    /// Edge id of the edge attached at `a`.
    pub fn edge_of(&self, a: Arm) -> usize {
        let tail = if self.is_incoming(a) { self.link(a) } else { a };
        // two outgoing slots per crossing, in slot order
        let x = &self.crossings[tail.crossing];
        let rank = (0..tail.slot).filter(|&s| !x.is_incoming(s)).count();
        tail.crossing * 2 + rank
    }

    /// Components as edge-id sequences in traversal order, each starting at its
    /// lowest edge id; components ordered by that id. Free loops are not listed.
    pub fn component_edges(&self) -> Vec<Vec<usize>> {
        let tails = self.edge_tails();
        let mut seen = vec![false; tails.len()];
        let mut out = Vec::new();
        for start in 0..tails.len() {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut arm = tails[start];
            loop {
                let e = self.edge_of(arm);
                if seen[e] {
                    break;
                }
                seen[e] = true;
                comp.push(e);
                arm = self.link(arm).opposite();
            }
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.component_edges().len() + self.free_loops
    }

    /// Whether the crossing graph is connected (free loops count as pieces).
    pub fn is_connected(&self) -> bool {
        let n = self.crossings.len();
        if n == 0 {
            return self.free_loops <= 1;
        }
        if self.free_loops > 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for a in self.crossings[c].links {
                if !seen[a.crossing] {
                    seen[a.crossing] = true;
                    stack.push(a.crossing);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn pairing(&self, c: usize, choice: Option<Smoothing>) -> [(u8, u8); 2] {
        match choice {
            Some(s) if !self.crossings[c].is_virtual() => s.pairs(),
            _ => PASS,
        }
    }

    /// Smooths every classical crossing as `choice` says and finds the loops by union-find.
    pub fn resolve_state(&self, choice: &BTreeMap<usize, Smoothing>) -> Result<State> {
        let order: Vec<usize> = (0..self.crossings.len() * 4).collect();
        self.resolve_state_in_order(choice, &order)
    }

    /// As `resolve_state`, processing the arm unions in the given order.
    pub fn resolve_state_in_order(
        &self,
        choice: &BTreeMap<usize, Smoothing>,
        order: &[usize],
    ) -> Result<State> {
        let classical = self.classical_indices();
        if classical.len() != choice.len() || classical.iter().any(|c| !choice.contains_key(c)) {
            return Err(Error::IncompleteChoice);
        }
        let n = self.crossings.len() * 4;
        let mut uf = UnionFind::new(n);
        for &i in order {
            let a = Arm::new(i / 4, (i % 4) as u8);
            uf.union(i, self.link(a).index());
            let pairs = self.pairing(a.crossing, choice.get(&a.crossing).copied());
            let partner = pairs
                .iter()
                .find_map(|&(p, q)| if p == a.slot { Some(q) } else if q == a.slot { Some(p) } else { None })
                .unwrap();
            uf.union(i, a.crossing * 4 + partner as usize);
        }
        let mut groups: BTreeMap<usize, Vec<Arm>> = BTreeMap::new();
        for i in 0..n {
            groups.entry(uf.find(i)).or_default().push(Arm::new(i / 4, (i % 4) as u8));
        }
        let mut loops: Vec<Vec<Arm>> = groups.into_values().collect();
        loops.sort();
        let loop_count = loops.len() + self.free_loops;
        Ok(State { choice: choice.clone(), loops, loop_count })
    }

    /// Loop count for the state where bit `k` of `mask` selects B at the `k`-th classical crossing.
    pub fn loop_count_mask(&self, classical: &[usize], mask: u64) -> usize {
        let mut choice: Vec<Option<Smoothing>> = vec![None; self.crossings.len()];
        for (k, &c) in classical.iter().enumerate() {
            choice[c] = Some(if mask >> k & 1 == 1 { Smoothing::B } else { Smoothing::A });
        }
        self.count_loops_with(|c| self.pairing(c, choice[c]))
    }

    /// Counts loops when crossing `c` reconnects its slots as `pairs(c)`.
    pub(crate) fn count_loops_with(&self, pairs: impl Fn(usize) -> [(u8, u8); 2]) -> usize {
        let n = self.crossings.len();
        let partner: Vec<[u8; 4]> = (0..n)
            .map(|c| {
                let mut p = [0u8; 4];
                for (a, b) in pairs(c) {
                    p[a as usize] = b;
                    p[b as usize] = a;
                }
                p
            })
            .collect();
        let mut seen = vec![false; n * 4];
        let mut loops = self.free_loops;
        for start in 0..n * 4 {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut a = Arm::new(start / 4, (start % 4) as u8);
            loop {
                seen[a.index()] = true;
                let b = self.link(a);
                seen[b.index()] = true;
                a = Arm::new(b.crossing, partner[b.crossing][b.slot as usize]);
                if seen[a.index()] {
                    break;
                }
            }
        }
        loops
    }

    /// Removes the listed crossings, joining their slots in pairs, and returns
    /// the compacted diagram. On oriented diagrams each pairing must join an
    /// incoming slot to an outgoing one.
    pub fn splice(&self, removals: &[(usize, [(u8, u8); 2])]) -> Diagram {
        let n = self.crossings.len();
        let mut partner: Vec<Option<[u8; 4]>> = vec![None; n];
        for &(c, pairs) in removals {
            let mut p = [0u8; 4];
            for (a, b) in pairs {
                p[a as usize] = b;
                p[b as usize] = a;
            }
            partner[c] = Some(p);
        }
        let keep: Vec<usize> = (0..n).filter(|&c| partner[c].is_none()).collect();
        let mut new_index = vec![usize::MAX; n];
        for (k, &c) in keep.iter().enumerate() {
            new_index[c] = k;
        }
        let mut seen = vec![false; n * 4];
        let mut crossings: Vec<Crossing> = keep.iter().map(|&c| self.crossings[c].clone()).collect();
        for (k, &c) in keep.iter().enumerate() {
            for s in 0..4u8 {
                let mut q = self.link(Arm::new(c, s));
                while let Some(p) = partner[q.crossing] {
                    seen[q.index()] = true;
                    let r = Arm::new(q.crossing, p[q.slot as usize]);
                    seen[r.index()] = true;
                    q = self.link(r);
                }
                crossings[k].links[s as usize] = Arm::new(new_index[q.crossing], q.slot);
            }
        }
        let mut free_loops = self.free_loops;
        for &(c, _) in removals {
            for s in 0..4u8 {
                let start = Arm::new(c, s);
                if seen[start.index()] {
                    continue;
                }
                free_loops += 1;
                let mut q = start;
                loop {
                    seen[q.index()] = true;
                    let r = Arm::new(q.crossing, partner[q.crossing].unwrap()[q.slot as usize]);
                    seen[r.index()] = true;
                    q = self.link(r);
                    if seen[q.index()] {
                        break;
                    }
                }
            }
        }
        let d = Diagram { crossings, free_loops, oriented: self.oriented };
        debug_assert!(d.validate().is_ok(), "{:?}", d.validate());
        d
    }

    /// Oriented smoothing of classical crossing `c`.
    pub fn smooth_oriented(&self, c: usize) -> Diagram {
        let x = &self.crossings[c];
        let over_out = (x.second_in + 2) % 4;
        self.splice(&[(c, [(0, over_out), (x.second_in, 2)])])
    }

    /// Exchanges over and under at classical crossing `c`.
    pub fn switch(&self, c: usize) -> Diagram {
        let k = self.crossings[c].second_in;
        let mut d = self.clone();
        d.rotate_slots(c, k);
        d
    }

    /// Renumbers slots of `c` so that old slot `k` becomes slot 0.
    pub(crate) fn rotate_slots(&mut self, c: usize, k: u8) {
        let old = self.crossings[c].clone();
        let new_slot = |s: u8| (s + 4 - k) % 4;
        let mut links = [Arm::new(0, 0); 4];
        for s in 0..4u8 {
            let mut t = old.links[s as usize];
            if t.crossing == c {
                t.slot = new_slot(t.slot);
            }
            links[new_slot(s) as usize] = t;
        }
        self.crossings[c].links = links;
        self.crossings[c].second_in = new_slot(0);
        for s in 0..4u8 {
            let t = links[s as usize];
            if t.crossing != c {
                self.crossings[t.crossing].links[t.slot as usize] = Arm::new(c, s);
            }
        }
    }

    /// Mirror image: every classical crossing switched.
    pub fn mirror(&self) -> Diagram {
        let mut d = self.clone();
        for c in 0..d.crossings.len() {
            if !d.crossings[c].is_virtual() {
                let k = d.crossings[c].second_in;
                d.rotate_slots(c, k);
            }
        }
        d
    }

    /// Disjoint union placed side by side.
    pub fn distant_union(&self, other: &Diagram) -> Diagram {
        let off = self.crossings.len();
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|x| {
            let mut x = x.clone();
            for a in &mut x.links {
                a.crossing += off;
            }
            x
        }));
        let mut d = Diagram::new_unchecked(crossings, self.free_loops + other.free_loops);
        d.oriented = self.oriented && other.oriented;
        d
    }

    /// Faces of the plane graph as cycles of darts; the face lies to the right of each dart.
    pub fn faces(&self) -> Vec<Vec<Arm>> {
        let n = self.crossings.len();
        let mut seen = vec![false; n * 4];
        let mut out = Vec::new();
        for start in 0..n * 4 {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut a = Arm::new(start / 4, (start % 4) as u8);
            while !seen[a.index()] {
                seen[a.index()] = true;
                face.push(a);
                a = self.link(a).ccw(1);
            }
            out.push(face);
        }
        out
    }

    /// Euler-characteristic genus of the surface carrying the diagram (0 = planar).
    pub fn genus(&self) -> usize {
        let v = self.crossings.len() as i64;
        if v == 0 {
            return 0;
        }
        let f = self.faces().len() as i64;
        let chi = v - 2 * v + f;
        ((2 - chi) / 2) as usize
    }

    /// Whether the two diagrams differ only by renumbering crossings (and, at
    /// virtual crossings, by which strand is called first). Connected diagrams only.
    pub fn is_isomorphic(&self, other: &Diagram) -> bool {
        let n = self.crossings.len();
        if n != other.crossings.len() || self.free_loops != other.free_loops {
            return false;
        }
        if n == 0 {
            return true;
        }
        (0..n).any(|target| (0..4u8).any(|r| self.match_from(other, target, r).is_some()))
    }

    fn match_from(&self, other: &Diagram, target: usize, rot: u8) -> Option<()> {
        let n = self.crossings.len();
        let mut map: Vec<Option<(usize, u8)>> = vec![None; n];
        let mut used = vec![false; n];
        let mut stack = vec![(0usize, target, rot)];
        while let Some((c, d, r)) = stack.pop() {
            match map[c] {
                Some(m) if m == (d, r) => continue,
                Some(_) => return None,
                None if used[d] => return None,
                None => {}
            }
            let (x, y) = (&self.crossings[c], &other.crossings[d]);
            if x.kind != y.kind || (!x.is_virtual() && r != 0) {
                return None;
            }
            if (0..4u8).any(|s| x.is_incoming(s) != y.is_incoming((s + r) % 4)) {
                return None;
            }
            map[c] = Some((d, r));
            used[d] = true;
            for s in 0..4u8 {
                let a = x.links[s as usize];
                let b = y.links[((s + r) % 4) as usize];
                stack.push((a.crossing, b.crossing, (b.slot + 4 - a.slot) % 4));
            }
        }
        map.iter().all(Option::is_some).then_some(())
    }

    /// Deterministic text key (the PD encoding).
    pub fn canonical_key(&self) -> String {
        self.encode(Format::Pd)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
