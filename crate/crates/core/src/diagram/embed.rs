//! Plane embedding of signed Gauss codes.
//!
//! The signs fix the cyclic order of the four ends at every classical
//! crossing, so a Gauss code determines a ribbon graph. Edges are added one
//! at a time along the components; when the two ends of a new edge lie in
//! different faces of the partial map, the edge follows a shortest path in
//! the dual graph and a virtual crossing is inserted on every edge it cuts.
//! Codes of planar diagrams never need one.

use std::collections::VecDeque;

use super::{Arm, Crossing, CrossingKind, Diagram};
use crate::{Error, Result};

/// One passage through a crossing: the slots where the strand enters and leaves.
#[derive(Clone, Copy, Debug)]
pub(super) struct Pass {
    pub crossing: usize,
    pub in_slot: u8,
    pub out_slot: u8,
}

struct Builder {
    kind: Vec<CrossingKind>,
    second_in: Vec<u8>,
    links: Vec<[Option<Arm>; 4]>,
}

impl Builder {
    fn present(&self, a: Arm) -> bool {
        self.links[a.crossing][a.slot as usize].is_some()
    }

    fn has_any(&self, c: usize) -> bool {
        self.links[c].iter().any(Option::is_some)
    }

    fn link(&self, a: Arm) -> Arm {
        self.links[a.crossing][a.slot as usize].expect("present arm")
    }

    fn is_incoming(&self, a: Arm) -> bool {
        a.slot == 0 || a.slot == self.second_in[a.crossing]
    }

    /// First present arm strictly counterclockwise after `a` (may be `a` itself).
    fn next_present(&self, a: Arm) -> Arm {
        (1..=4).map(|k| a.ccw(k)).find(|&b| self.present(b)).expect("crossing has a present arm")
    }

    fn set(&mut self, a: Arm, b: Arm) {
        self.links[a.crossing][a.slot as usize] = Some(b);
        self.links[b.crossing][b.slot as usize] = Some(a);
    }

    fn face_ids(&self) -> Vec<[usize; 4]> {
        let n = self.links.len();
        let mut face = vec![[usize::MAX; 4]; n];
        let mut count = 0;
        for c in 0..n {
            for s in 0..4u8 {
                let start = Arm::new(c, s);
                if !self.present(start) || face[c][s as usize] != usize::MAX {
                    continue;
                }
                let mut a = start;
                while face[a.crossing][a.slot as usize] == usize::MAX {
                    face[a.crossing][a.slot as usize] = count;
                    a = self.next_present(self.link(a));
                }
                count += 1;
            }
        }
        face
    }

    fn connect(&mut self, u: Arm, v: Arm) {
        if !self.has_any(u.crossing) || !self.has_any(v.crossing) {
            self.set(u, v);
            return;
        }
        let face = self.face_ids();
        let f = |a: Arm| face[a.crossing][a.slot as usize];
        let fu = f(self.next_present(u));
        let fv = f(self.next_present(v));
        if fu == fv {
            self.set(u, v);
            return;
        }
        // BFS in the dual graph; each step crosses the edge of dart h from face(h) to face(link h).
        let nfaces = face.iter().flatten().filter(|&&x| x != usize::MAX).max().map_or(0, |m| m + 1);
        let mut via: Vec<Option<(usize, Arm)>> = vec![None; nfaces];
        let mut seen = vec![false; nfaces];
        seen[fu] = true;
        let mut queue = VecDeque::from([fu]);
        let darts: Vec<Arm> = (0..self.links.len())
            .flat_map(|c| (0..4u8).map(move |s| Arm::new(c, s)))
            .filter(|&a| self.present(a))
            .collect();
        while let Some(g) = queue.pop_front() {
            if g == fv {
                break;
            }
            for &h in &darts {
                if f(h) != g {
                    continue;
                }
                let to = f(self.link(h));
                if !seen[to] {
                    seen[to] = true;
                    via[to] = Some((g, h));
                    queue.push_back(to);
                }
            }
        }
        let mut path = Vec::new();
        let mut g = fv;
        while g != fu {
            let (prev, h) = via[g].expect("dual graph is connected");
            path.push(h);
            g = prev;
        }
        path.reverse();
        let mut prev = u;
        for h in path {
            let h2 = self.link(h);
            let w = self.links.len();
            self.kind.push(CrossingKind::Virtual);
            self.second_in.push(if self.is_incoming(h) { 1 } else { 3 });
            self.links.push([None; 4]);
            self.set(prev, Arm::new(w, 0));
            self.set(h2, Arm::new(w, 1));
            self.set(h, Arm::new(w, 3));
            prev = Arm::new(w, 2);
        }
        self.set(prev, v);
    }
}

/// Embeds the components given as cyclic pass sequences over `kinds.len()` crossings.
/// The greedy insertion depends on where the walk starts, so every starting
/// point of the first component is tried and the fewest virtual crossings kept.
pub(super) fn embed(kinds: Vec<(CrossingKind, u8)>, components: &[Vec<Pass>]) -> Result<Diagram> {
    let starts = components.first().map_or(1, |c| c.len().clamp(1, 64));
    let mut best: Option<Diagram> = None;
    for start in 0..starts {
        let mut comps = components.to_vec();
        if let Some(first) = comps.first_mut() {
            first.rotate_left(start);
        }
        let d = embed_once(&kinds, &comps)?;
        if best.as_ref().is_none_or(|b| d.crossing_count() < b.crossing_count()) {
            best = Some(d);
        }
    }
    Ok(best.expect("at least one attempt"))
}

fn embed_once(kinds: &[(CrossingKind, u8)], components: &[Vec<Pass>]) -> Result<Diagram> {
    let n = kinds.len();
    let mut b = Builder {
        kind: kinds.iter().map(|k| k.0).collect(),
        second_in: kinds.iter().map(|k| k.1).collect(),
        links: vec![[None; 4]; n],
    };
    let mut free_loops = 0;
    let mut remaining: Vec<&Vec<Pass>> = components.iter().collect();
    let mut first = true;
    while !remaining.is_empty() {
        // next component: one touching what is already placed
        let pick = if first {
            0
        } else {
            match remaining.iter().position(|c| c.iter().any(|p| b.has_any(p.crossing))) {
                Some(i) => i,
                None if remaining.iter().all(|c| c.is_empty()) && n == 0 => 0,
                None => return Err(Error::Disconnected),
            }
        };
        let comp = remaining.remove(pick);
        if comp.is_empty() {
            free_loops += 1;
            first = false;
            continue;
        }
        let start = if first { 0 } else { comp.iter().position(|p| b.has_any(p.crossing)).unwrap() };
        first = false;
        let m = comp.len();
        for k in 0..m {
            let p = comp[(start + k) % m];
            let q = comp[(start + k + 1) % m];
            b.connect(Arm::new(p.crossing, p.out_slot), Arm::new(q.crossing, q.in_slot));
        }
    }
    if n > 0 && free_loops > 0 {
        return Err(Error::Disconnected);
    }
    let crossings = (0..b.links.len())
        .map(|c| {
            let links = b.links[c].map(|a| a.expect("every arm placed"));
            Crossing { kind: b.kind[c], second_in: b.second_in[c], links }
        })
        .collect();
    Diagram::new(crossings, free_loops)
}
