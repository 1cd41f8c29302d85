//! Alexander polynomial from the crossing/region matrix, and its expansion
//! over marker states (Jordan-Euler trails).
//!
//! At every crossing the corners are taken counterclockwise starting with the
//! one just after the incoming under-edge, labelled `t, -t, 1, -1`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::diagram::{Arm, Diagram};
use crate::matrix::{zpoly_det, ZPoly};
use crate::{Error, LaurentPoly, Result};

/// Label of corner `(s, s+1)` as `(sign, power of t)`.
const CORNER: [(i64, usize); 4] = [(1, 1), (-1, 1), (1, 0), (-1, 0)];

#[derive(Clone, Debug)]
pub struct RegionComplex {
    /// Each region as its cycle of darts.
    pub regions: Vec<Vec<Arm>>,
    /// `corner[c][s]` is the region holding corner `(s, s+1)` of crossing `c`.
    pub corner: Vec<[usize; 4]>,
}

impl RegionComplex {
    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    /// The two regions on either side of the edge leaving `tail`.
    pub fn sides(&self, d: &Diagram, tail: Arm) -> (usize, usize) {
        let f = |a: Arm| self.regions.iter().position(|r| r.contains(&a)).expect("every dart lies on a face");
        (f(tail), f(d.link(tail)))
    }
}

fn require_planar(d: &Diagram) -> Result<()> {
    if !d.is_classical() || d.genus() != 0 {
        return Err(Error::NonPlanar);
    }
    Ok(())
}

pub fn regions(d: &Diagram) -> Result<RegionComplex> {
    require_planar(d)?;
    if d.crossing_count() == 0 {
        // one circle: inside and outside
        return Ok(RegionComplex { regions: vec![Vec::new(), Vec::new()], corner: Vec::new() });
    }
    let regions = d.faces();
    let mut corner = vec![[0usize; 4]; d.crossing_count()];
    for (r, face) in regions.iter().enumerate() {
        for a in face {
            corner[a.crossing][((a.slot + 3) % 4) as usize] = r;
        }
    }
    Ok(RegionComplex { regions, corner })
}

/// Two regions sharing an edge, preferring distinct ones.
fn deleted_pair(d: &Diagram, rc: &RegionComplex) -> (usize, usize) {
    d.edge_tails()
        .into_iter()
        .map(|t| rc.sides(d, t))
        .find(|(a, b)| a != b)
        .unwrap_or_else(|| rc.sides(d, Arm::new(0, 2)))
}

fn check_input(d: &Diagram) -> Result<()> {
    if !d.is_oriented() {
        return Err(Error::Unoriented);
    }
    require_planar(d)?;
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Determinant of the matrix with the two deleted regions' columns removed, as a polynomial in `t`.
pub fn alexander_determinant(d: &Diagram) -> Result<LaurentPoly> {
    check_input(d)?;
    if d.crossing_count() == 0 {
        return Ok(LaurentPoly::one());
    }
    let rc = regions(d)?;
    let (r1, r2) = deleted_pair(d, &rc);
    let cols: Vec<usize> = (0..rc.len()).filter(|&r| r != r1 && r != r2).collect();
    let n = d.crossing_count();
    let mut m = vec![vec![ZPoly::default(); cols.len()]; n];
    for c in 0..n {
        for s in 0..4 {
            let r = rc.corner[c][s];
            let Some(j) = cols.iter().position(|&x| x == r) else { continue };
            let (sign, pow) = CORNER[s];
            let e = &mut m[c][j].0;
            if e.len() <= pow {
                e.resize(pow + 1, BigInt::zero());
            }
            e[pow] += sign;
        }
    }
    if cols.len() != n {
        // a split or degenerate diagram; the minor is not square
        return Ok(LaurentPoly::zero());
    }
    Ok(zpoly_to_laurent(&zpoly_det(&m)))
}

fn zpoly_to_laurent(p: &ZPoly) -> LaurentPoly {
    p.0.iter().enumerate().map(|(k, c)| LaurentPoly::mono(c.clone(), "t", k as i64)).sum()
}

/// Multiplies by `±t^(k/2)` so the exponents are symmetric about 0 and the lowest coefficient is positive.
pub fn normalize_alexander(p: &LaurentPoly) -> LaurentPoly {
    let Some((lo, hi)) = p.degree_range("t") else {
        return LaurentPoly::zero();
    };
    let shifted = p.shift("t", -(lo + hi) / 2);
    let lowest = shifted.univariate("t").expect("univariate in t")[0].1.clone();
    if lowest < BigInt::zero() {
        -shifted
    } else {
        shifted
    }
}

pub fn alexander_poly(d: &Diagram) -> Result<LaurentPoly> {
    Ok(normalize_alexander(&alexander_determinant(d)?))
}

/// Equality up to a unit `±t^k`.
pub fn equal_up_to_unit(a: &LaurentPoly, b: &LaurentPoly) -> bool {
    normalize_alexander(a) == normalize_alexander(b)
}

#[derive(Clone, Debug, Serialize)]
pub struct TrailState {
    /// `(crossing, slot)`: the marker sits in corner `(slot, slot+1)`.
    pub markers: Vec<(usize, u8)>,
    pub sign: i64,
    #[serde(serialize_with = "crate::poly::serialize_text")]
    pub term: LaurentPoly,
    /// Loops of the marker-directed smoothing.
    pub loops: usize,
}

/// Expands the determinant over marker states: each crossing gets a marker in
/// one corner, the marked regions running over all non-deleted regions once.
pub fn trail_state_sum(d: &Diagram) -> Result<(LaurentPoly, Vec<TrailState>)> {
    check_input(d)?;
    let n = d.crossing_count();
    if n == 0 {
        let s = TrailState { markers: Vec::new(), sign: 1, term: LaurentPoly::one(), loops: 1 };
        return Ok((LaurentPoly::one(), vec![s]));
    }
    let rc = regions(d)?;
    let (r1, r2) = deleted_pair(d, &rc);
    let cols: Vec<usize> = (0..rc.len()).filter(|&r| r != r1 && r != r2).collect();
    let col_of: Vec<Option<usize>> = (0..rc.len()).map(|r| cols.iter().position(|&x| x == r)).collect();
    let mut states = Vec::new();
    let mut choice: Vec<u8> = vec![0; n];
    let mut used = vec![false; cols.len()];
    search(d, &rc, &col_of, 0, &mut choice, &mut used, &mut states);
    let total = states.iter().map(|s: &TrailState| s.term.clone()).sum();
    Ok((total, states))
}

fn search(
    d: &Diagram,
    rc: &RegionComplex,
    col_of: &[Option<usize>],
    c: usize,
    choice: &mut Vec<u8>,
    used: &mut Vec<bool>,
    out: &mut Vec<TrailState>,
) {
    let n = choice.len();
    if c == n {
        let perm: Vec<usize> = (0..n).map(|k| col_of[rc.corner[k][choice[k] as usize]].unwrap()).collect();
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        let mut term = LaurentPoly::constant(sign);
        for k in 0..n {
            let (s, p) = CORNER[choice[k] as usize];
            term = term * LaurentPoly::mono(s, "t", p as i64);
        }
        let loops = d.count_loops_with(|k| {
            let p = choice[k];
            [((p + 1) % 4, (p + 2) % 4), ((p + 3) % 4, p)]
        });
        let markers = choice.iter().enumerate().map(|(k, &p)| (k, p)).collect();
        out.push(TrailState { markers, sign, term, loops });
        return;
    }
    for s in 0..4u8 {
        let Some(j) = col_of[rc.corner[c][s as usize]] else { continue };
        if used[j] {
            continue;
        }
        used[j] = true;
        choice[c] = s;
        search(d, rc, col_of, c + 1, choice, used, out);
        used[j] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn braid(n: usize, w: &[i64]) -> Diagram {
        Diagram::from_braid_word(n, w).unwrap()
    }

    #[test]
    fn region_counts() {
        assert_eq!(regions(&Diagram::unknot()).unwrap().len(), 2);
        assert_eq!(regions(&braid(2, &[1, 1, 1])).unwrap().len(), 5);
        assert_eq!(regions(&braid(3, &[1, -2, 1, -2])).unwrap().len(), 6);
    }

    #[test]
    fn golden_polynomials() {
        assert_eq!(alexander_poly(&Diagram::unknot()).unwrap(), LaurentPoly::one());
        assert_eq!(alexander_poly(&braid(2, &[1, 1, 1])).unwrap(), p("t - 1 + t^-1"));
        assert_eq!(alexander_poly(&braid(3, &[1, -2, 1, -2])).unwrap(), p("t - 3 + t^-1"));
        assert_eq!(alexander_poly(&braid(2, &[1, 1, 1, 1, 1])).unwrap(), p("t^2 - t + 1 - t^-1 + t^-2"));
    }

    #[test]
    fn trails_expand_the_determinant() {
        for (n, w) in [(2, &[1, 1, 1][..]), (3, &[1, -2, 1, -2]), (3, &[1, 1, 1, 2, -1, 2])] {
            let d = braid(n, w);
            let (sum, states) = trail_state_sum(&d).unwrap();
            assert_eq!(sum, alexander_determinant(&d).unwrap());
            assert!(states.iter().all(|s| s.loops == 1));
        }
        let (sum, states) = trail_state_sum(&Diagram::unknot()).unwrap();
        assert!(sum.is_one());
        assert_eq!(states.len(), 1);
    }

    #[test]
    fn rejects_virtual() {
        let v = Diagram::from_gauss("O1+O2+U1+U2+").unwrap();
        assert!(matches!(alexander_poly(&v), Err(Error::NonPlanar)));
    }
}
