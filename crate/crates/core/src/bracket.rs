//! The bracket state sum, its writhe normalization and the Jones polynomial.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{Diagram, Smoothing};
use crate::{Error, LaurentPoly, Result};

pub const DEFAULT_CAP: usize = 20;

/// Writhe-normalized bracket and the Jones polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketValue {
    #[serde(serialize_with = "crate::poly::serialize_text")]
    pub bracket: LaurentPoly,
    #[serde(serialize_with = "crate::poly::serialize_text")]
    pub f: LaurentPoly,
    #[serde(serialize_with = "crate::poly::serialize_text")]
    pub jones: LaurentPoly,
}

pub(crate) fn check_cap(d: &Diagram, cap: usize) -> Result<()> {
    let c = d.classical_count();
    if c > cap || c > 62 {
        return Err(Error::TooManyCrossings { crossings: c, cap });
    }
    Ok(())
}

/// All states with their loop counts, ordered by number of B-smoothings and
/// then by the bitmask of B choices over classical crossings.
pub fn enumerate_states(d: &Diagram, cap: usize) -> Result<Vec<(BTreeMap<usize, Smoothing>, usize)>> {
    check_cap(d, cap)?;
    let cls = d.classical_indices();
    let mut masks: Vec<u64> = (0..1u64 << cls.len()).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    Ok(masks
        .into_par_iter()
        .map(|mask| {
            let choice = cls
                .iter()
                .enumerate()
                .map(|(k, &c)| (c, if mask >> k & 1 == 1 { Smoothing::B } else { Smoothing::A }))
                .collect();
            (choice, d.loop_count_mask(&cls, mask))
        })
        .collect())
}

/// Multiplicities of `(#A - #B, loops)` over all states.
pub fn state_histogram(d: &Diagram, cap: usize) -> Result<BTreeMap<(i64, usize), u64>> {
    check_cap(d, cap)?;
    let cls = d.classical_indices();
    let k = cls.len() as i64;
    let hist = (0..1u64 << cls.len())
        .into_par_iter()
        .fold(HashMap::new, |mut h: HashMap<(i64, usize), u64>, mask| {
            let b = mask.count_ones() as i64;
            *h.entry((k - 2 * b, d.loop_count_mask(&cls, mask))).or_default() += 1;
            h
        })
        .reduce(HashMap::new, |mut a, b| {
            for (key, v) in b {
                *a.entry(key).or_default() += v;
            }
            a
        });
    Ok(hist.into_iter().collect())
}

pub fn bracket_poly(d: &Diagram) -> Result<LaurentPoly> {
    bracket_poly_capped(d, DEFAULT_CAP)
}

pub fn bracket_poly_capped(d: &Diagram, cap: usize) -> Result<LaurentPoly> {
    let hist = state_histogram(d, cap)?;
    let delta = LaurentPoly::loop_value();
    let mut powers = vec![LaurentPoly::one()];
    let mut out = LaurentPoly::zero();
    for ((a, loops), mult) in hist {
        while powers.len() < loops {
            let next = powers.last().unwrap() * &delta;
            powers.push(next);
        }
        // the empty diagram has no loops and bracket 1
        let dpow = &powers[loops.saturating_sub(1)];
        out += &(&LaurentPoly::mono(mult as i64, "A", a) * dpow);
    }
    Ok(out)
}

/// `(-A^3)^(-w)`.
pub fn writhe_factor(w: i64) -> LaurentPoly {
    let sign = if w % 2 == 0 { 1 } else { -1 };
    LaurentPoly::mono(sign, "A", -3 * w)
}

/// `A -> t^(-1/4)`.
pub fn to_jones_variable(f: &LaurentPoly) -> LaurentPoly {
    f.substitute("A", &LaurentPoly::mono_q(1, "t", -1)).expect("monomial substitution")
}

pub fn normalized_jones(d: &Diagram) -> Result<BracketValue> {
    normalized_jones_capped(d, DEFAULT_CAP)
}

pub fn normalized_jones_capped(d: &Diagram, cap: usize) -> Result<BracketValue> {
    let w = d.writhe()?;
    let bracket = bracket_poly_capped(d, cap)?;
    let f = &bracket * &writhe_factor(w);
    let jones = to_jones_variable(&f);
    Ok(BracketValue { bracket, f, jones })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::moves::{MoveKind, MoveSpec, Site};

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn braid(n: usize, w: &[i64]) -> Diagram {
        Diagram::from_braid_word(n, w).unwrap()
    }

    #[test]
    fn positive_kink_calibration() {
        let k = Diagram::unknot()
            .apply_move(&MoveSpec::at(MoveKind::R1Plus, Site::FreeLoop { variant: 0 }))
            .unwrap();
        assert_eq!(k.writhe().unwrap(), 1);
        assert_eq!(bracket_poly(&k).unwrap(), p("-A^3"));
        let k = Diagram::unknot()
            .apply_move(&MoveSpec::at(MoveKind::R1Plus, Site::FreeLoop { variant: 1 }))
            .unwrap();
        assert_eq!(bracket_poly(&k).unwrap(), p("-A^-3"));
    }

    #[test]
    fn golden_values() {
        assert_eq!(bracket_poly(&Diagram::unknot()).unwrap(), LaurentPoly::one());
        let two = Diagram::unknot().distant_union(&Diagram::unknot());
        assert_eq!(bracket_poly(&two).unwrap(), p("-A^2 - A^-2"));
        let t = braid(2, &[1, 1, 1]);
        let v = normalized_jones(&t).unwrap();
        assert_eq!(v.bracket, p("-A^5 - A^-3 + A^-7"));
        assert_eq!(v.f, p("A^-4 + A^-12 - A^-16"));
        assert_eq!(v.jones, p("t + t^3 - t^4"));
        let e = normalized_jones(&braid(3, &[1, -2, 1, -2])).unwrap();
        assert_eq!(e.jones, p("t^-2 - t^-1 + 1 - t + t^2"));
    }

    #[test]
    fn trefoil_tiers() {
        let t = braid(2, &[1, 1, 1]);
        let states = enumerate_states(&t, DEFAULT_CAP).unwrap();
        let loops: Vec<usize> = states.iter().map(|s| s.1).collect();
        assert_eq!(loops, vec![2, 1, 1, 1, 2, 2, 2, 3]);
        let u = enumerate_states(&Diagram::unknot(), DEFAULT_CAP).unwrap();
        assert_eq!(u.len(), 1);
        assert_eq!(u[0].1, 1);
    }

    #[test]
    fn cap_and_orientation() {
        let t = braid(2, &[1; 5]);
        assert!(matches!(bracket_poly_capped(&t, 4), Err(Error::TooManyCrossings { .. })));
        let u = braid(2, &[1, 1, 1]).forget_orientation();
        assert!(matches!(normalized_jones(&u), Err(Error::Unoriented)));
        assert!(bracket_poly(&u).is_ok());
    }

    #[test]
    fn mirror_inverts_variable() {
        for w in [&[1, 1, 1][..], &[1, 1, 1, 2, -1, 2], &[1, 1, -2, 1, -2, -2]] {
            let d = braid(3, w);
            let a = normalized_jones(&d).unwrap();
            let b = normalized_jones(&d.mirror()).unwrap();
            assert_eq!(b.jones, a.jones.invert_var("t"));
        }
    }

    #[test]
    fn disjoint_loop_multiplies_by_d() {
        let t = braid(3, &[1, -2, 1, -2]);
        let u = t.distant_union(&Diagram::unknot());
        assert_eq!(bracket_poly(&u).unwrap(), bracket_poly(&t).unwrap() * LaurentPoly::loop_value());
    }
}
