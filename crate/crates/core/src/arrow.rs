//! The arrow polynomial: an oriented state sum whose disoriented smoothings
//! leave cusps on the state loops. Cusp pairs on the same side cancel; what
//! survives on a loop is a zigzag of `2n` cusps recorded by the variable `Kn`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::bracket::{check_cap, writhe_factor, DEFAULT_CAP};
use crate::diagram::{Arm, Diagram};
use crate::{Error, LaurentPoly, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Cusp {
    L,
    R,
}

impl Cusp {
    pub fn flip(self) -> Cusp {
        match self {
            Cusp::L => Cusp::R,
            Cusp::R => Cusp::L,
        }
    }
}

/// A cyclic word of cusp sides met along one loop.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CuspWord(pub Vec<Cusp>);

impl fmt::Display for CuspWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            f.write_str(if *c == Cusp::L { "L" } else { "R" })?;
        }
        Ok(())
    }
}

impl FromStr for CuspWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'L' | 'l' => Ok(Cusp::L),
                'R' | 'r' => Ok(Cusp::R),
                _ => Err(Error::Parse(format!("cusp words use L and R, found {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(CuspWord)
    }
}

impl CuspWord {
    pub fn reversed(&self) -> CuspWord {
        CuspWord(self.0.iter().rev().map(|c| c.flip()).collect())
    }
}

/// Zigzag index of a cyclic cusp word: half the length of its reduced form.
pub fn reduce_cusp_word(w: &CuspWord) -> Result<usize> {
    if w.0.len() % 2 == 1 {
        return Err(Error::OddLength(w.0.len()));
    }
    let mut stack: Vec<Cusp> = Vec::with_capacity(w.0.len());
    for &c in &w.0 {
        if stack.last() == Some(&c) {
            stack.pop();
        } else {
            stack.push(c);
        }
    }
    // what is left alternates; only the two ends can still meet around the cycle
    let (mut i, mut j) = (0, stack.len());
    while j - i >= 2 && stack[i] == stack[j - 1] {
        i += 1;
        j -= 1;
    }
    Ok((j - i) / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowValue {
    #[serde(serialize_with = "crate::poly::serialize_text")]
    pub raw: LaurentPoly,
    #[serde(serialize_with = "crate::poly::serialize_text")]
    pub normalized: LaurentPoly,
}

pub fn k_var(n: usize) -> String {
    format!("K{n}")
}

/// Per-crossing pairing for the oriented (bit 0) or disoriented (bit 1) smoothing.
fn pairing(d: &Diagram, c: usize, disoriented: bool) -> [(u8, u8); 2] {
    let x = &d.crossings()[c];
    let over_out = (x.second_in + 2) % 4;
    if disoriented {
        [(0, x.second_in), (2, over_out)]
    } else {
        [(0, over_out), (x.second_in, 2)]
    }
}

/// Zigzag indices of the loops of one state (free loops excluded).
pub(crate) fn state_loops(d: &Diagram, disoriented: &[bool]) -> Vec<usize> {
    let n = d.crossing_count();
    let partner: Vec<[u8; 4]> = (0..n)
        .map(|c| {
            let pairs = if d.crossings()[c].is_virtual() {
                [(0, 2), (1, 3)]
            } else {
                pairing(d, c, disoriented[c])
            };
            let mut p = [0u8; 4];
            for (a, b) in pairs {
                p[a as usize] = b;
                p[b as usize] = a;
            }
            p
        })
        .collect();
    let mut seen = vec![false; n * 4];
    let mut out = Vec::new();
    for start in 0..n * 4 {
        if seen[start] {
            continue;
        }
        let mut word = Vec::new();
        let mut a = Arm::new(start / 4, (start % 4) as u8);
        loop {
            seen[a.crossing * 4 + a.slot as usize] = true;
            let b = d.link(a);
            seen[b.crossing * 4 + b.slot as usize] = true;
            let q = partner[b.crossing][b.slot as usize];
            let x = &d.crossings()[b.crossing];
            if !x.is_virtual() && x.is_incoming(b.slot) == x.is_incoming(q) {
                word.push(if q == (b.slot + 1) % 4 { Cusp::R } else { Cusp::L });
            }
            a = Arm::new(b.crossing, q);
            if seen[a.crossing * 4 + a.slot as usize] {
                break;
            }
        }
        out.push(reduce_cusp_word(&CuspWord(word)).expect("a closed loop has an even number of cusps"));
    }
    out
}

pub fn arrow_polynomial(d: &Diagram) -> Result<ArrowValue> {
    arrow_polynomial_capped(d, DEFAULT_CAP)
}

pub fn arrow_polynomial_capped(d: &Diagram, cap: usize) -> Result<ArrowValue> {
    let w = d.writhe()?;
    check_cap(d, cap)?;
    let cls = d.classical_indices();
    let n = d.crossing_count();
    type Key = (i64, usize, Vec<usize>);
    let hist: HashMap<Key, u64> = (0..1u64 << cls.len())
        .into_par_iter()
        .fold(HashMap::new, |mut h: HashMap<Key, u64>, mask| {
            let mut dis = vec![false; n];
            let mut a_exp = 0i64;
            for (k, &c) in cls.iter().enumerate() {
                dis[c] = mask >> k & 1 == 1;
                // positive: oriented A, disoriented A^-1; negative swaps
                let s = d.crossings()[c].sign();
                a_exp += if dis[c] { -s } else { s };
            }
            let mut ks: Vec<usize> = state_loops(d, &dis);
            let loops = ks.len() + d.free_loops();
            ks.retain(|&k| k > 0);
            ks.sort_unstable();
            *h.entry((a_exp, loops, ks)).or_default() += 1;
            h
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    let hist: BTreeMap<Key, u64> = hist.into_iter().collect();
    let delta = LaurentPoly::loop_value();
    let mut raw = LaurentPoly::zero();
    for ((a_exp, loops, ks), mult) in hist {
        let mut factors: Vec<(String, i64)> = vec![("A".into(), a_exp * 4)];
        for k in ks {
            factors.push((k_var(k), 4));
        }
        let f: Vec<(&str, i64)> = factors.iter().map(|(v, e)| (v.as_str(), *e)).collect();
        let term = LaurentPoly::monomial(mult as i64, &f) * delta.pow(loops.saturating_sub(1) as i64);
        raw += &term;
    }
    let normalized = &raw * &writhe_factor(w);
    Ok(ArrowValue { raw, normalized })
}

/// Sets every `Kn` to 1.
pub fn collapse_k(p: &LaurentPoly) -> LaurentPoly {
    let mut out = p.clone();
    for v in p.vars().iter().filter(|v| v.starts_with('K')) {
        out = out.substitute(v, &LaurentPoly::one()).expect("K variables carry integer exponents");
    }
    out
}
