//! Diagrammatic Temperley-Lieb algebra and its rectangular (connection
//! category) morphisms.
//!
//! A matching has `top` points numbered `0..top` left to right and `bottom`
//! points numbered `top..top+bottom` left to right. Products stack the left
//! factor on top of the right one.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, LaurentPoly, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Matching {
    top: usize,
    bottom: usize,
    partner: Vec<usize>,
}

impl Matching {
    /// Builds a matching from pairs of point indices, checking it is perfect and planar.
    pub fn from_pairs(top: usize, bottom: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = top + bottom;
        let mut partner = vec![usize::MAX; n];
        for &(a, b) in pairs {
            if a >= n || b >= n || a == b || partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(Error::InconsistentCode(format!("bad pair ({a},{b})")));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if partner.contains(&usize::MAX) {
            return Err(Error::InconsistentCode("matching leaves a point unpaired".into()));
        }
        let m = Self { top, bottom, partner };
        if !m.is_planar() {
            return Err(Error::NonPlanar);
        }
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, n + i)).collect();
        Self::from_pairs(n, n, &pairs).expect("identity is planar")
    }

    /// `U_i` in `TL_n`, `1 <= i < n`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::BadIndex { index: i as i64, strands: n });
        }
        let mut pairs = vec![(i - 1, i), (n + i - 1, n + i)];
        pairs.extend((0..n).filter(|&k| k != i - 1 && k != i).map(|k| (k, n + k)));
        Self::from_pairs(n, n, &pairs)
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p]
    }

    /// Pairs `(a, b)` with `a < b`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len()).filter(|&a| a < self.partner[a]).map(|a| (a, self.partner[a])).collect()
    }

    /// Position of a point going clockwise around the rectangle: top left to
    /// right, then bottom right to left.
    fn boundary_pos(&self, p: usize) -> usize {
        if p < self.top {
            p
        } else {
            self.top + (self.top + self.bottom - 1 - p)
        }
    }

    fn is_planar(&self) -> bool {
        let n = self.partner.len();
        let mut by_pos = vec![0; n];
        for p in 0..n {
            by_pos[self.boundary_pos(p)] = p;
        }
        let mut stack = Vec::new();
        for &p in &by_pos {
            if stack.last() == Some(&self.partner[p]) {
                stack.pop();
            } else {
                stack.push(p);
            }
        }
        stack.is_empty()
    }

    /// Stacks `self` on top of `other`; returns the matching and the number of closed loops.
    pub fn compose(&self, other: &Matching) -> Result<(Matching, usize)> {
        if self.bottom != other.top {
            return Err(Error::SignatureMismatch(format!(
                "cannot stack {}->{} on {}->{}",
                self.top, self.bottom, other.top, other.bottom
            )));
        }
        let (m, k, n) = (self.top, self.bottom, other.bottom);
        // global points: self top 0..m, other bottom m..m+n; middle j in 0..k
        enum P {
            Outer(usize),
            MidFromAbove(usize),
            MidFromBelow(usize),
        }
        let step_self = |q: usize| if q < m { P::Outer(q) } else { P::MidFromAbove(q - m) };
        let step_other = |q: usize| if q >= k { P::Outer(m + q - k) } else { P::MidFromBelow(q) };
        let mut partner = vec![usize::MAX; m + n];
        let mut mid_seen = vec![false; k];
        for start in 0..m + n {
            if partner[start] != usize::MAX {
                continue;
            }
            let mut cur = if start < m { step_self(self.partner[start]) } else { step_other(other.partner[start - m + k]) };
            let end = loop {
                match cur {
                    P::Outer(q) => break q,
                    // arrived at middle point j from above: continue in `other`
                    P::MidFromAbove(j) => {
                        mid_seen[j] = true;
                        cur = step_other(other.partner[j]);
                    }
                    P::MidFromBelow(j) => {
                        mid_seen[j] = true;
                        cur = step_self(self.partner[m + j]);
                    }
                }
            };
            partner[start] = end;
            partner[end] = start;
        }
        let mut loops = 0;
        for j in 0..k {
            if mid_seen[j] {
                continue;
            }
            loops += 1;
            let mut cur = j;
            loop {
                mid_seen[cur] = true;
                let below = other.partner[cur];
                mid_seen[below] = true;
                let above = self.partner[m + below] - m;
                if mid_seen[above] {
                    break;
                }
                cur = above;
            }
        }
        Ok((Matching { top: m, bottom: n, partner }, loops))
    }

    /// Loops in the closure joining top point `i` to bottom point `i` (square matchings).
    pub fn closure_loops(&self) -> Result<usize> {
        if self.top != self.bottom {
            return Err(Error::SignatureMismatch(format!("closure of {}->{}", self.top, self.bottom)));
        }
        let n = self.top;
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                let q = self.partner[p];
                seen[q] = true;
                p = if q < n { q + n } else { q - n };
            }
        }
        Ok(loops)
    }

    /// All planar matchings with the given signature.
    pub fn all(top: usize, bottom: usize) -> Vec<Matching> {
        let n = top + bottom;
        if n % 2 == 1 {
            return Vec::new();
        }
        // non-crossing matchings of boundary positions, mapped back to points
        fn rec(pos: &[usize], out: &mut Vec<Vec<(usize, usize)>>) {
            if pos.is_empty() {
                out.push(Vec::new());
                return;
            }
            for j in (1..pos.len()).step_by(2) {
                let mut inner = Vec::new();
                rec(&pos[1..j], &mut inner);
                let mut outer = Vec::new();
                rec(&pos[j + 1..], &mut outer);
                for a in &inner {
                    for b in &outer {
                        let mut v = vec![(pos[0], pos[j])];
                        v.extend(a);
                        v.extend(b);
                        out.push(v);
                    }
                }
            }
        }
        let template = Matching { top, bottom, partner: vec![0; n] };
        let mut point_at = vec![0; n];
        for p in 0..n {
            point_at[template.boundary_pos(p)] = p;
        }
        let positions: Vec<usize> = (0..n).collect();
        let mut raw = Vec::new();
        rec(&positions, &mut raw);
        let mut out: Vec<Matching> = raw
            .into_iter()
            .map(|pairs| {
                let pts: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (point_at[a], point_at[b])).collect();
                Matching::from_pairs(top, bottom, &pts).expect("non-crossing by construction")
            })
            .collect();
        out.sort();
        out
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |p: usize| if p < self.top { format!("t{}", p + 1) } else { format!("b{}", p - self.top + 1) };
        let parts: Vec<String> = self.pairs().into_iter().map(|(a, b)| format!("{}-{}", name(a), name(b))).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// A linear combination of matchings with a common signature.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TLElement {
    top: usize,
    bottom: usize,
    terms: BTreeMap<Matching, LaurentPoly>,
}

impl TLElement {
    pub fn zero(top: usize, bottom: usize) -> Self {
        Self { top, bottom, terms: BTreeMap::new() }
    }

    pub fn from_matching(m: Matching, coeff: LaurentPoly) -> Self {
        let mut e = Self::zero(m.top, m.bottom);
        e.add_term(m, coeff);
        e
    }

    pub fn identity(n: usize) -> Self {
        Self::from_matching(Matching::identity(n), LaurentPoly::one())
    }

    pub fn generator(n: usize, i: usize) -> Result<Self> {
        Ok(Self::from_matching(Matching::generator(n, i)?, LaurentPoly::one()))
    }

    pub fn terms(&self) -> &BTreeMap<Matching, LaurentPoly> {
        &self.terms
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.top, self.bottom)
    }

    fn add_term(&mut self, m: Matching, c: LaurentPoly) {
        let e = self.terms.entry(m).or_insert_with(LaurentPoly::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.top, self.bottom);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.signature() != other.signature() {
            return Err(Error::SignatureMismatch("sum of elements with different signatures".into()));
        }
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.add_term(m.clone(), v.clone());
        }
        Ok(out)
    }

    /// `self` stacked on top of `other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.bottom != other.top {
            return Err(Error::SignatureMismatch(format!(
                "cannot stack {}->{} on {}->{}",
                self.top, self.bottom, other.top, other.bottom
            )));
        }
        let d = LaurentPoly::loop_value();
        let mut out = Self::zero(self.top, other.bottom);
        for (x, cx) in &self.terms {
            for (y, cy) in &other.terms {
                let (m, loops) = x.compose(y)?;
                out.add_term(m, cx * cy * d.pow(loops as i64));
            }
        }
        Ok(out)
    }

    /// Sum of `coeff * d^(loops - 1)` over the closures of the terms.
    pub fn closure_trace(&self) -> Result<LaurentPoly> {
        if self.top != self.bottom {
            return Err(Error::SignatureMismatch(format!("trace of {}->{}", self.top, self.bottom)));
        }
        let d = LaurentPoly::loop_value();
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let loops = m.closure_loops()? as i64;
            // the empty matching closes to nothing; count it as one loop
            out += &(c * &d.pow((loops - 1).max(0)));
        }
        Ok(out)
    }
}

impl fmt::Display for TLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c}){m}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The bracket representation of a braid word in `TL_n`.
pub fn braid_to_tl(n: usize, word: &[i64]) -> Result<TLElement> {
    let a = LaurentPoly::var("A");
    let ainv = LaurentPoly::mono(1, "A", -1);
    let mut out = TLElement::identity(n);
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if g == 0 || i >= n {
            return Err(Error::BadIndex { index: g, strands: n });
        }
        let (c1, cu) = if g > 0 { (&a, &ainv) } else { (&ainv, &a) };
        let letter = TLElement::identity(n).scale(c1).add(&TLElement::generator(n, i)?.scale(cu))?;
        out = out.mul(&letter)?;
    }
    Ok(out)
}

/// For `a: m -> n` stacked on `b: n -> m`, returns `q = a b` and the number
/// of loops `k` formed by `b a`, so that `q q = d^k q`. Requires `b a` to be
/// the identity matching up to loops.
pub fn meander_projector(a: &Matching, b: &Matching) -> Result<(TLElement, usize)> {
    if a.bottom != b.top || a.top != b.bottom {
        return Err(Error::SignatureMismatch(format!(
            "expected a: m->n and b: n->m, got {}->{} and {}->{}",
            a.top, a.bottom, b.top, b.bottom
        )));
    }
    let (ba, k) = b.compose(a)?;
    if ba != Matching::identity(a.bottom) {
        return Err(Error::NonIdentityComposite);
    }
    let (q, loops) = a.compose(b)?;
    debug_assert_eq!(loops, 0);
    Ok((TLElement::from_matching(q, LaurentPoly::one()), k))
}

/// The defining relations among the generators of `TL_n`, one entry per instance.
pub fn verify_relations(n: usize) -> Vec<(String, bool)> {
    let d = LaurentPoly::loop_value();
    let u: Vec<TLElement> = (1..n).map(|i| TLElement::generator(n, i).expect("index in range")).collect();
    let mul = |a: &TLElement, b: &TLElement| a.mul(b).expect("same signature");
    let mut out = Vec::new();
    for i in 0..u.len() {
        out.push((format!("U{0}U{0} = d U{0}", i + 1), mul(&u[i], &u[i]) == u[i].scale(&d)));
        if i + 1 < u.len() {
            out.push((format!("U{0}U{1}U{0} = U{0}", i + 1, i + 2), mul(&mul(&u[i], &u[i + 1]), &u[i]) == u[i]));
            out.push((format!("U{1}U{0}U{1} = U{1}", i + 1, i + 2), mul(&mul(&u[i + 1], &u[i]), &u[i + 1]) == u[i + 1]));
        }
        for j in i + 2..u.len() {
            out.push((format!("U{}U{} = U{}U{}", i + 1, j + 1, j + 1, i + 1), mul(&u[i], &u[j]) == mul(&u[j], &u[i])));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: usize, i: usize) -> TLElement {
        TLElement::generator(n, i).unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn relations() {
        let d = LaurentPoly::loop_value();
        assert_eq!(u(3, 1).mul(&u(3, 1)).unwrap(), u(3, 1).scale(&d));
        assert_eq!(u(3, 1).mul(&u(3, 2)).unwrap().mul(&u(3, 1)).unwrap(), u(3, 1));
        assert_eq!(u(3, 2).mul(&u(3, 1)).unwrap().mul(&u(3, 2)).unwrap(), u(3, 2));
        assert_eq!(u(4, 1).mul(&u(4, 3)).unwrap(), u(4, 3).mul(&u(4, 1)).unwrap());
        assert!(matches!(u(3, 1).mul(&u(4, 1)), Err(Error::SignatureMismatch(_))));
    }

    #[test]
    fn relations_in_tl5() {
        let r = verify_relations(5);
        // 4 idempotent, 6 braid-like, 3 far commutation
        assert_eq!(r.len(), 13);
        assert!(r.iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn braid_images() {
        assert_eq!(braid_to_tl(2, &[1]).unwrap(), TLElement::identity(2).scale(&p("A")).add(&u(2, 1).scale(&p("A^-1"))).unwrap());
        assert_eq!(braid_to_tl(2, &[-1]).unwrap(), TLElement::identity(2).scale(&p("A^-1")).add(&u(2, 1).scale(&p("A"))).unwrap());
        assert_eq!(braid_to_tl(3, &[]).unwrap(), TLElement::identity(3));
        assert_eq!(braid_to_tl(3, &[1, 2, 1]).unwrap(), braid_to_tl(3, &[2, 1, 2]).unwrap());
        assert_eq!(braid_to_tl(3, &[1, -1]).unwrap(), TLElement::identity(3));
        assert!(matches!(braid_to_tl(2, &[2]), Err(Error::BadIndex { .. })));
    }

    #[test]
    fn traces() {
        assert_eq!(TLElement::identity(2).closure_trace().unwrap(), LaurentPoly::loop_value());
        assert_eq!(u(2, 1).closure_trace().unwrap(), LaurentPoly::one());
        assert_eq!(braid_to_tl(2, &[1, 1, 1]).unwrap().closure_trace().unwrap(), p("-A^5 - A^-3 + A^-7"));
    }

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| Matching::all(n, n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42]);
        assert_eq!(Matching::all(3, 1).len(), 2);
    }

    #[test]
    fn meanders() {
        // a: 3 -> 1 caps t1,t2 and runs t3 down; b is its half-turn rotation
        let a = Matching::from_pairs(3, 1, &[(0, 1), (2, 3)]).unwrap();
        let b = Matching::from_pairs(1, 3, &[(0, 1), (2, 3)]).unwrap();
        let (q, k) = meander_projector(&a, &b).unwrap();
        assert_eq!(k, 0);
        assert_eq!(q.mul(&q).unwrap(), q);
        let id = Matching::identity(1);
        let (q, k) = meander_projector(&id, &id).unwrap();
        assert_eq!((q, k), (TLElement::identity(1), 0));
        let cap = Matching::from_pairs(2, 0, &[(0, 1)]).unwrap();
        let cup = Matching::from_pairs(0, 2, &[(0, 1)]).unwrap();
        let (q, k) = meander_projector(&cap, &cup).unwrap();
        assert_eq!(k, 1);
        assert_eq!(q, u(2, 1));
        assert_eq!(q.mul(&q).unwrap(), q.scale(&LaurentPoly::loop_value()));
        // b caps its own top pair, so b a cannot be the identity
        let a = Matching::from_pairs(4, 2, &[(0, 1), (2, 4), (3, 5)]).unwrap();
        let b = Matching::from_pairs(2, 4, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        assert!(matches!(meander_projector(&a, &b), Err(Error::NonIdentityComposite)));
    }

    #[test]
    fn rejects_crossing_pairs() {
        assert!(matches!(Matching::from_pairs(2, 2, &[(0, 3), (1, 2)]), Err(Error::NonPlanar)));
    }
}
