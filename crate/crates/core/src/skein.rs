//! Skein recursion toward descending diagrams.
//!
//! Components are walked in order of their lowest edge id, each from that
//! edge. A crossing first met from below spoils the descending property; it is
//! switched (keeping the walk unchanged) and the difference is paid for with
//! the oriented smoothing, which has one crossing fewer. Once every crossing
//! is first met from above the diagram is an unlink.

use std::collections::HashMap;
use std::str::FromStr;

use crate::diagram::Diagram;
use crate::{Error, LaurentPoly, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SkeinRule {
    /// `∇+ - ∇- = z ∇0`.
    Conway,
    /// `a P+ - a^-1 P- = z P0`.
    Homflypt,
    /// `t^-1 V+ - t V- = (t^1/2 - t^-1/2) V0`.
    Jones,
}

impl FromStr for SkeinRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "conway" => Ok(SkeinRule::Conway),
            "homflypt" | "homfly" => Ok(SkeinRule::Homflypt),
            "jones" => Ok(SkeinRule::Jones),
            _ => Err(Error::Parse(format!("unknown skein rule {s:?}"))),
        }
    }
}

fn p(s: &str) -> LaurentPoly {
    s.parse().expect("valid literal")
}

impl SkeinRule {
    /// `(c_switch, c_smooth)` with `D = c_switch * D' + c_smooth * D0` at a crossing of the given sign.
    fn coefficients(self, sign: i64) -> (LaurentPoly, LaurentPoly) {
        let positive = sign > 0;
        match (self, positive) {
            (SkeinRule::Conway, true) => (p("1"), p("z")),
            (SkeinRule::Conway, false) => (p("1"), p("-z")),
            (SkeinRule::Homflypt, true) => (p("a^-2"), p("a^-1*z")),
            (SkeinRule::Homflypt, false) => (p("a^2"), p("-a*z")),
            (SkeinRule::Jones, true) => (p("t^2"), p("t^(3/2) - t^(1/2)")),
            (SkeinRule::Jones, false) => (p("t^-2"), p("-t^(-1/2) + t^(-3/2)")),
        }
    }

    fn unlink(self, components: usize) -> LaurentPoly {
        let k = components.saturating_sub(1) as i64;
        match self {
            SkeinRule::Conway => {
                if components == 1 {
                    LaurentPoly::one()
                } else {
                    LaurentPoly::zero()
                }
            }
            SkeinRule::Homflypt => p("a*z^-1 - a^-1*z^-1").pow_nonneg(k),
            SkeinRule::Jones => p("-t^(1/2) - t^(-1/2)").pow_nonneg(k),
        }
    }
}

trait PowNonneg {
    fn pow_nonneg(&self, k: i64) -> LaurentPoly;
}

impl PowNonneg for LaurentPoly {
    fn pow_nonneg(&self, k: i64) -> LaurentPoly {
        (0..k).fold(LaurentPoly::one(), |acc, _| &acc * self)
    }
}

/// Crossings first met from below, in walk order.
pub fn descending_violations(d: &Diagram) -> Vec<usize> {
    let tails = d.edge_tails();
    let mut seen = vec![false; d.crossing_count()];
    let mut out = Vec::new();
    for comp in d.component_edges() {
        for e in comp {
            let head = d.link(tails[e]);
            let c = head.crossing;
            if seen[c] || d.crossings()[c].is_virtual() {
                continue;
            }
            seen[c] = true;
            if !d.crossings()[c].is_over(head.slot) {
                out.push(c);
            }
        }
    }
    out
}

pub fn skein_eval(d: &Diagram, rule: SkeinRule) -> Result<LaurentPoly> {
    if !d.is_oriented() {
        return Err(Error::Unoriented);
    }
    if !d.is_classical() {
        return Err(Error::NonPlanar);
    }
    let mut memo = HashMap::new();
    Ok(eval(d, rule, &mut memo))
}

fn eval(d: &Diagram, rule: SkeinRule, memo: &mut HashMap<String, LaurentPoly>) -> LaurentPoly {
    let key = d.canonical_key();
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut cur = d.clone();
    let mut factor = LaurentPoly::one();
    let mut total = LaurentPoly::zero();
    for c in descending_violations(d) {
        let (c_switch, c_smooth) = rule.coefficients(cur.crossings()[c].sign());
        let smoothed = cur.smooth_oriented(c);
        total += &(&factor * &c_smooth * eval(&smoothed, rule, memo));
        factor = &factor * &c_switch;
        cur = cur.switch(c);
    }
    total += &(&factor * &rule.unlink(cur.component_count()));
    memo.insert(key, total.clone());
    total
}
