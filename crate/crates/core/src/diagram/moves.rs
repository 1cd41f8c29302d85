//! Reidemeister moves and their virtual analogues, as local rewrites.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Arm, Crossing, CrossingKind, Diagram, PASS};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum MoveKind {
    R1Plus,
    R1Minus,
    R2,
    R2Inv,
    R3,
    V1,
    V1Inv,
    V2,
    V2Inv,
    V3,
    VMixed,
}

impl MoveKind {
    pub const ALL: [MoveKind; 11] = [
        MoveKind::R1Plus,
        MoveKind::R1Minus,
        MoveKind::R2,
        MoveKind::R2Inv,
        MoveKind::R3,
        MoveKind::V1,
        MoveKind::V1Inv,
        MoveKind::V2,
        MoveKind::V2Inv,
        MoveKind::V3,
        MoveKind::VMixed,
    ];

    pub const CLASSICAL: [MoveKind; 5] =
        [MoveKind::R1Plus, MoveKind::R1Minus, MoveKind::R2, MoveKind::R2Inv, MoveKind::R3];

    /// Change in crossing count.
    pub fn delta(self) -> i64 {
        match self {
            MoveKind::R1Plus | MoveKind::V1 => 1,
            MoveKind::R1Minus | MoveKind::V1Inv => -1,
            MoveKind::R2 | MoveKind::V2 => 2,
            MoveKind::R2Inv | MoveKind::V2Inv => -2,
            _ => 0,
        }
    }

    pub fn is_virtual(self) -> bool {
        matches!(self, MoveKind::V1 | MoveKind::V1Inv | MoveKind::V2 | MoveKind::V2Inv | MoveKind::V3 | MoveKind::VMixed)
    }
}

impl std::str::FromStr for MoveKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let k = match s.to_ascii_lowercase().replace(['_', '-'], "").as_str() {
            "r1+" | "r1plus" | "r1" => MoveKind::R1Plus,
            "r1minus" | "r1inv" => MoveKind::R1Minus,
            "r2" => MoveKind::R2,
            "r2inv" => MoveKind::R2Inv,
            "r3" => MoveKind::R3,
            "v1" => MoveKind::V1,
            "v1inv" => MoveKind::V1Inv,
            "v2" => MoveKind::V2,
            "v2inv" => MoveKind::V2Inv,
            "v3" => MoveKind::V3,
            "vmixed" => MoveKind::VMixed,
            _ if s == "R1-" || s == "r1-" => MoveKind::R1Minus,
            _ => return Err(Error::Parse(format!("unknown move {s:?}"))),
        };
        Ok(k)
    }
}

/// Where a move applies.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Site {
    /// The edge leaving `tail`. For kinks, `variant` bit 0 selects a negative
    /// crossing and bit 1 makes the strand pass over first.
    Edge { tail: Arm, variant: u8 },
    /// The crossingless unknot.
    FreeLoop { variant: u8 },
    Crossing(usize),
    /// The face to the right of this dart.
    Face(Arm),
    /// Two darts on a common face; the first one's strand goes over if `over_first`.
    Pair { a: Arm, b: Arm, over_first: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSpec {
    pub kind: MoveKind,
    /// Explicit site; when absent one is drawn with `seed`.
    pub site: Option<Site>,
    pub seed: u64,
}

impl MoveSpec {
    pub fn at(kind: MoveKind, site: Site) -> Self {
        Self { kind, site: Some(site), seed: 0 }
    }

    pub fn random(kind: MoveKind, seed: u64) -> Self {
        Self { kind, site: None, seed }
    }
}

fn self_kinked(x: &Crossing, c: usize) -> bool {
    (0..4u8).any(|s| {
        let t = x.links[s as usize];
        t.crossing == c && (t.slot + 4 - s) % 2 == 1
    })
}

impl Diagram {
    /// Every site where `kind` applies, in a deterministic order.
    pub fn sites(&self, kind: MoveKind) -> Vec<Site> {
        let n = self.crossings.len();
        match kind {
            MoveKind::R1Plus | MoveKind::V1 => {
                let variants = if kind == MoveKind::V1 { 2 } else { 4 };
                if n == 0 {
                    if self.free_loops == 1 {
                        return (0..variants).map(|variant| Site::FreeLoop { variant }).collect();
                    }
                    return Vec::new();
                }
                self.edge_tails()
                    .into_iter()
                    .flat_map(|tail| (0..variants).map(move |variant| Site::Edge { tail, variant }))
                    .collect()
            }
            MoveKind::R1Minus | MoveKind::V1Inv => (0..n)
                .filter(|&c| {
                    let x = &self.crossings[c];
                    x.is_virtual() == (kind == MoveKind::V1Inv) && self_kinked(x, c)
                })
                .map(Site::Crossing)
                .collect(),
            MoveKind::R2 | MoveKind::V2 => {
                let mut out = Vec::new();
                for face in self.faces() {
                    for i in 0..face.len() {
                        for j in i + 1..face.len() {
                            let (a, b) = (face[i], face[j]);
                            if self.edge_of(a) == self.edge_of(b) {
                                continue;
                            }
                            if kind == MoveKind::V2 {
                                out.push(Site::Pair { a, b, over_first: false });
                            } else {
                                out.push(Site::Pair { a, b, over_first: true });
                                out.push(Site::Pair { a, b, over_first: false });
                            }
                        }
                    }
                }
                out
            }
            MoveKind::R2Inv | MoveKind::V2Inv => self
                .faces()
                .into_iter()
                .filter(|f| self.bigon_ok(f, kind == MoveKind::V2Inv))
                .map(|f| Site::Face(f[0]))
                .collect(),
            MoveKind::R3 | MoveKind::V3 | MoveKind::VMixed => self
                .faces()
                .into_iter()
                .filter(|f| self.triangle_ok(f, kind))
                .map(|f| Site::Face(f[0]))
                .collect(),
        }
    }

    fn face_at(&self, dart: Arm) -> Vec<Arm> {
        let mut face = vec![dart];
        let mut a = self.link(dart).ccw(1);
        while a != dart && face.len() <= 4 * self.crossings.len() {
            face.push(a);
            a = self.link(a).ccw(1);
        }
        face
    }

    fn bigon_ok(&self, face: &[Arm], virt: bool) -> bool {
        if face.len() != 2 || face[0].crossing == face[1].crossing {
            return false;
        }
        let (p, q) = (&self.crossings[face[0].crossing], &self.crossings[face[1].crossing]);
        if p.is_virtual() != virt || q.is_virtual() != virt {
            return false;
        }
        // the same strand must lie over at both ends of the bigon edge
        virt || face[0].slot % 2 == self.link(face[0]).slot % 2
    }

    fn triangle_ok(&self, face: &[Arm], kind: MoveKind) -> bool {
        if face.len() != 3 {
            return false;
        }
        let cs: Vec<usize> = face.iter().map(|a| a.crossing).collect();
        if cs[0] == cs[1] || cs[1] == cs[2] || cs[0] == cs[2] {
            return false;
        }
        let virtuals = cs.iter().filter(|&&c| self.crossings[c].is_virtual()).count();
        match kind {
            MoveKind::V3 => virtuals == 3,
            MoveKind::VMixed => virtuals == 2,
            _ => {
                // cyclic triangles (each strand over exactly once) are not R3 sites
                virtuals == 0
                    && face.iter().any(|&d| {
                        let e = self.link(d);
                        d.slot % 2 == 1 && e.slot % 2 == 1
                    })
            }
        }
    }

    /// Applies a move; the result is a new diagram.
    pub fn apply_move(&self, m: &MoveSpec) -> Result<Diagram> {
        let site = match m.site {
            Some(s) => s,
            None => {
                let sites = self.sites(m.kind);
                let mut rng = ChaCha8Rng::seed_from_u64(m.seed);
                *sites
                    .choose(&mut rng)
                    .ok_or_else(|| Error::PatternNotFound(format!("no site for {:?}", m.kind)))?
            }
        };
        let missing = || Error::PatternNotFound(format!("{:?} does not apply at {:?}", m.kind, site));
        let n = self.crossings.len();
        let arm_ok = |a: Arm| a.crossing < n && a.slot < 4;
        let mut out = match (m.kind, site) {
            (MoveKind::R1Plus | MoveKind::V1, Site::Edge { tail, variant }) => {
                if !arm_ok(tail) || self.is_incoming(tail) || variant >= 4 {
                    return Err(missing());
                }
                self.add_kink(Some(tail), variant, m.kind == MoveKind::V1)
            }
            (MoveKind::R1Plus | MoveKind::V1, Site::FreeLoop { variant }) => {
                if n != 0 || self.free_loops != 1 || variant >= 4 {
                    return Err(missing());
                }
                self.add_kink(None, variant, m.kind == MoveKind::V1)
            }
            (MoveKind::R1Minus | MoveKind::V1Inv, Site::Crossing(c)) => {
                if c >= n
                    || self.crossings[c].is_virtual() != (m.kind == MoveKind::V1Inv)
                    || !self_kinked(&self.crossings[c], c)
                {
                    return Err(missing());
                }
                self.splice(&[(c, PASS)])
            }
            (MoveKind::R2 | MoveKind::V2, Site::Pair { a, b, over_first }) => {
                if !arm_ok(a) || !arm_ok(b) || self.edge_of(a) == self.edge_of(b) || !self.face_at(a).contains(&b) {
                    return Err(missing());
                }
                self.add_bigon(a, b, over_first, m.kind == MoveKind::V2)
            }
            (MoveKind::R2Inv | MoveKind::V2Inv, Site::Face(d)) => {
                if !arm_ok(d) {
                    return Err(missing());
                }
                let face = self.face_at(d);
                if !self.bigon_ok(&face, m.kind == MoveKind::V2Inv) {
                    return Err(missing());
                }
                self.splice(&[(face[0].crossing, PASS), (face[1].crossing, PASS)])
            }
            (MoveKind::R3 | MoveKind::V3 | MoveKind::VMixed, Site::Face(d)) => {
                if !arm_ok(d) {
                    return Err(missing());
                }
                let face = self.face_at(d);
                if !self.triangle_ok(&face, m.kind) {
                    return Err(missing());
                }
                self.flip_triangle(&face)
            }
            _ => return Err(missing()),
        };
        out.oriented = self.oriented;
        Ok(out)
    }

    fn add_kink(&self, tail: Option<Arm>, variant: u8, virt: bool) -> Diagram {
        let negative = variant & 1 == 1;
        let over_first = variant & 2 == 2 && !virt;
        let second_in = if negative { 1 } else { 3 };
        // (entry slot, loop out, loop in, exit slot)
        let (entry, loop_out, loop_in, exit) = match (over_first, negative) {
            (false, false) => (0, 2, 3, 1),
            (false, true) => (0, 2, 1, 3),
            (true, false) => (3, 1, 0, 2),
            (true, true) => (1, 3, 0, 2),
        };
        let w = self.crossings.len();
        let mut crossings = self.crossings.clone();
        let kind = if virt { CrossingKind::Virtual } else { CrossingKind::Classical };
        crossings.push(Crossing { kind, second_in, links: [Arm::new(w, 0); 4] });
        join(&mut crossings, Arm::new(w, loop_out), Arm::new(w, loop_in));
        let mut free_loops = self.free_loops;
        match tail {
            Some(t) => {
                let head = self.link(t);
                join(&mut crossings, t, Arm::new(w, entry));
                join(&mut crossings, Arm::new(w, exit), head);
            }
            None => {
                free_loops -= 1;
                join(&mut crossings, Arm::new(w, exit), Arm::new(w, entry));
            }
        }
        Diagram::new_unchecked(crossings, free_loops)
    }

    fn add_bigon(&self, a: Arm, b: Arm, over_first: bool, virt: bool) -> Diagram {
        // Picture the face with dart `a` along its bottom running west and `b`
        // along its top running east. The strand of `b` dips down across the
        // strand of `a`, crossing it at Q (west) and then P (east). Arms of
        // both new crossings are listed counterclockwise from east.
        let (a2, b2) = (self.link(a), self.link(b));
        let n = self.crossings.len();
        let (p, q) = (n, n + 1);
        let fwd1 = !self.is_incoming(a);
        let fwd2 = !self.is_incoming(b);
        let under = if over_first || virt { 1 } else { 0 };
        let p_in = [fwd1, !fwd2, !fwd1, fwd2];
        let q_in = [fwd1, fwd2, !fwd1, !fwd2];
        let layout = |incoming: [bool; 4]| -> (u8, u8) {
            let r = (0..4u8).find(|&i| i % 2 == under && incoming[i as usize]).unwrap();
            let j = (0..4u8).find(|&i| i % 2 != under && incoming[i as usize]).unwrap();
            (r, (j + 4 - r) % 4)
        };
        let (pr, p_second) = layout(p_in);
        let (qr, q_second) = layout(q_in);
        let pa = |i: u8| Arm::new(p, (i + 4 - pr) % 4);
        let qa = |i: u8| Arm::new(q, (i + 4 - qr) % 4);
        let kind = if virt { CrossingKind::Virtual } else { CrossingKind::Classical };
        let mut crossings = self.crossings.clone();
        crossings.push(Crossing { kind, second_in: p_second, links: [Arm::new(p, 0); 4] });
        crossings.push(Crossing { kind, second_in: q_second, links: [Arm::new(q, 0); 4] });
        join(&mut crossings, a, pa(0));
        join(&mut crossings, pa(2), qa(0));
        join(&mut crossings, qa(2), a2);
        join(&mut crossings, b, qa(1));
        join(&mut crossings, qa(3), pa(3));
        join(&mut crossings, pa(1), b2);
        Diagram::new_unchecked(crossings, self.free_loops)
    }

    /// Slides each strand of a triangular face across the opposite crossing.
    fn flip_triangle(&self, face: &[Arm]) -> Diagram {
        // per strand: (entry arm, first internal out, second internal in, exit arm)
        let strands: Vec<(Arm, Arm, Arm, Arm)> = face
            .iter()
            .map(|&d| {
                let e = self.link(d);
                let (p_out, q_in) = if self.is_incoming(d) { (e, d) } else { (d, e) };
                (p_out.opposite(), p_out, q_in, q_in.opposite())
            })
            .collect();
        let remap = |y: Arm| -> Arm {
            for &(entry, p_out, q_in, exit) in &strands {
                if y == entry {
                    return q_in;
                }
                if y == exit {
                    return p_out;
                }
            }
            y
        };
        let mut crossings = self.crossings.clone();
        for &(entry, p_out, q_in, exit) in &strands {
            let ext_in = remap(self.link(entry));
            let ext_out = remap(self.link(exit));
            join(&mut crossings, ext_in, q_in);
            join(&mut crossings, exit, entry);
            join(&mut crossings, p_out, ext_out);
        }
        Diagram::new_unchecked(crossings, self.free_loops)
    }
}

fn join(crossings: &mut [Crossing], a: Arm, b: Arm) {
    crossings[a.crossing].links[a.slot as usize] = b;
    crossings[b.crossing].links[b.slot as usize] = a;
}
