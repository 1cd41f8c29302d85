//! The bracket as a tensor contraction over cups, caps and crossings.
//!
//! Entries live in `Z[A, A^-1][i]`, stored as pairs `re + i*im` of Laurent
//! polynomials. A state vector over `k` strands has `2^k` entries; strand 0
//! is the most significant bit of the index.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, LaurentPoly, Result};

/// `re + i*im`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Gauss {
    pub re: LaurentPoly,
    pub im: LaurentPoly,
}

impl Gauss {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn real(re: LaurentPoly) -> Self {
        Self { re, im: LaurentPoly::zero() }
    }

    pub fn imag(im: LaurentPoly) -> Self {
        Self { re: LaurentPoly::zero(), im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl fmt::Display for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "i*({})", self.im),
            _ => write!(f, "{} + i*({})", self.re, self.im),
        }
    }
}

impl Add<&Gauss> for &Gauss {
    type Output = Gauss;
    fn add(self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub<&Gauss> for &Gauss {
    type Output = Gauss;
    fn sub(self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Neg for &Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss { re: -&self.re, im: -&self.im }
    }
}

impl Mul<&Gauss> for &Gauss {
    type Output = Gauss;
    fn mul(self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

/// Dense square or rectangular matrix; `m[row][col]`.
pub type GMatrix = Vec<Vec<Gauss>>;

pub fn identity(n: usize) -> GMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Gauss::real(LaurentPoly::one()) } else { Gauss::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &GMatrix, b: &GMatrix) -> GMatrix {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut s = Gauss::zero();
                    for l in 0..k {
                        if !a[i][l].is_zero() && !b[l][j].is_zero() {
                            s = &s + &(&a[i][l] * &b[l][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mat_sub(a: &GMatrix, b: &GMatrix) -> GMatrix {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
}

fn scale(a: &GMatrix, c: &Gauss) -> GMatrix {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

fn is_zero(a: &GMatrix) -> bool {
    a.iter().flatten().all(Gauss::is_zero)
}

/// Cup/cap matrix and the two crossing matrices; `r[(c,d)][(a,b)]` maps the
/// strands entering at the top `(a,b)` to those leaving at the bottom `(c,d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrixSet {
    pub m: [[Gauss; 2]; 2],
    pub r_plus: GMatrix,
    pub r_minus: GMatrix,
}

fn cap_cup(m: &[[Gauss; 2]; 2]) -> GMatrix {
    let mut u = vec![vec![Gauss::zero(); 4]; 4];
    for c in 0..4 {
        for a in 0..4 {
            u[c][a] = &m[c >> 1][c & 1] * &m[a >> 1][a & 1];
        }
    }
    u
}

impl RMatrixSet {
    /// Crossing matrices `x*I + y*U` built from the bracket expansion.
    pub fn from_m(m: [[Gauss; 2]; 2]) -> Self {
        let a = Gauss::real(LaurentPoly::var("A"));
        let ainv = Gauss::real(LaurentPoly::mono(1, "A", -1));
        let u = cap_cup(&m);
        let id = identity(4);
        let r_plus = add(&scale(&id, &a), &scale(&u, &ainv));
        let r_minus = add(&scale(&id, &ainv), &scale(&u, &a));
        Self { m, r_plus, r_minus }
    }
}

fn add(a: &GMatrix, b: &GMatrix) -> GMatrix {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect()).collect()
}

/// `M = [[0, iA], [-iA^-1, 0]]`.
pub fn default_rmatrix() -> RMatrixSet {
    let m = [
        [Gauss::zero(), Gauss::imag(LaurentPoly::var("A"))],
        [Gauss::imag(LaurentPoly::mono(-1, "A", -1)), Gauss::zero()],
    ];
    RMatrixSet::from_m(m)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "event", content = "at")]
pub enum Event {
    Cup(usize),
    Cap(usize),
    #[serde(rename = "cross+")]
    CrossPlus(usize),
    #[serde(rename = "cross-")]
    CrossMinus(usize),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MorseWord {
    pub events: Vec<Event>,
}

impl MorseWord {
    /// Strand count after each event, starting from `start` strands.
    pub fn profile(&self, start: usize) -> Result<Vec<usize>> {
        let mut k = start;
        let mut out = Vec::with_capacity(self.events.len());
        for &e in &self.events {
            k = match e {
                Event::Cup(i) if i <= k => k + 2,
                Event::Cap(i) | Event::CrossPlus(i) | Event::CrossMinus(i) if i + 1 < k => {
                    if matches!(e, Event::Cap(_)) {
                        k - 2
                    } else {
                        k
                    }
                }
                _ => {
                    return Err(Error::BadIndex { index: position(e) as i64, strands: k });
                }
            };
            out.push(k);
        }
        Ok(out)
    }
}

fn position(e: Event) -> usize {
    match e {
        Event::Cup(i) | Event::Cap(i) | Event::CrossPlus(i) | Event::CrossMinus(i) => i,
    }
}

/// Trace closure of a braid: nested cups, the letters on the left strands, nested caps.
pub fn compile_morse(n: usize, word: &[i64]) -> Result<MorseWord> {
    let mut events: Vec<Event> = (0..n).map(Event::Cup).collect();
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if g == 0 || i >= n {
            return Err(Error::BadIndex { index: g, strands: n });
        }
        events.push(if g > 0 { Event::CrossPlus(i - 1) } else { Event::CrossMinus(i - 1) });
    }
    events.extend((0..n).rev().map(Event::Cap));
    Ok(MorseWord { events })
}

fn apply(state: &[Gauss], k: usize, e: Event, rm: &RMatrixSet) -> (Vec<Gauss>, usize) {
    match e {
        Event::Cup(i) => {
            let low = k - i;
            let mut out = vec![Gauss::zero(); state.len() << 2];
            for (idx, v) in state.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let (left, right) = (idx >> low, idx & ((1 << low) - 1));
                for ab in 0..4 {
                    let w = &rm.m[ab >> 1][ab & 1];
                    if !w.is_zero() {
                        out[(((left << 2) | ab) << low) | right] = v * w;
                    }
                }
            }
            (out, k + 2)
        }
        Event::Cap(i) => {
            let low = k - i - 2;
            let mut out = vec![Gauss::zero(); state.len() >> 2];
            for (idx, v) in state.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let ab = (idx >> low) & 3;
                let w = &rm.m[ab >> 1][ab & 1];
                if w.is_zero() {
                    continue;
                }
                let j = ((idx >> (low + 2)) << low) | (idx & ((1 << low) - 1));
                out[j] = &out[j] + &(v * w);
            }
            (out, k - 2)
        }
        Event::CrossPlus(i) | Event::CrossMinus(i) => {
            let r = if matches!(e, Event::CrossPlus(_)) { &rm.r_plus } else { &rm.r_minus };
            let low = k - i - 2;
            let mut out = vec![Gauss::zero(); state.len()];
            for (idx, v) in state.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let ab = (idx >> low) & 3;
                let base = idx & !(3 << low);
                for (cd, row) in r.iter().enumerate() {
                    if !row[ab].is_zero() {
                        let j = base | (cd << low);
                        out[j] = &out[j] + &(v * &row[ab]);
                    }
                }
            }
            (out, k)
        }
    }
}

/// Runs the events over a state vector on `k` strands.
pub fn sweep(state: Vec<Gauss>, k: usize, events: &[Event], rm: &RMatrixSet) -> Result<(Vec<Gauss>, usize)> {
    MorseWord { events: events.to_vec() }.profile(k)?;
    let (mut s, mut k) = (state, k);
    for &e in events {
        (s, k) = apply(&s, k, e, rm);
    }
    Ok((s, k))
}

/// The tangle of `events` as a matrix from `k_in` strands to whatever remains.
pub fn tangle_matrix(k_in: usize, events: &[Event], rm: &RMatrixSet) -> Result<GMatrix> {
    let mut cols = Vec::with_capacity(1 << k_in);
    for basis in 0..1usize << k_in {
        let mut v = vec![Gauss::zero(); 1 << k_in];
        v[basis] = Gauss::real(LaurentPoly::one());
        cols.push(sweep(v, k_in, events, rm)?.0);
    }
    let rows = cols.first().map_or(0, Vec::len);
    Ok((0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect())
}

/// Full contraction of a closed Morse word. The result is `d` times the bracket.
pub fn contract(mw: &MorseWord, rm: &RMatrixSet) -> Result<LaurentPoly> {
    let profile = mw.profile(0)?;
    if profile.last().copied().unwrap_or(0) != 0 {
        return Err(Error::SignatureMismatch("Morse word does not close up".into()));
    }
    let (s, _) = sweep(vec![Gauss::real(LaurentPoly::one())], 0, &mw.events, rm)?;
    let v = &s[0];
    assert!(v.im.is_zero(), "closed contraction left an imaginary part: {v}");
    Ok(v.re.clone())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub pass: bool,
    /// Nonzero residual entries, as text.
    pub residual: Vec<String>,
}

fn check(name: &'static str, lhs: &GMatrix, rhs: &GMatrix) -> AxiomCheck {
    let diff = mat_sub(lhs, rhs);
    let residual: Vec<String> = diff
        .iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(j, x)| format!("[{i},{j}] {x}"))
        })
        .collect();
    AxiomCheck { name, pass: is_zero(&diff), residual }
}

fn kron(a: &GMatrix, b: &GMatrix) -> GMatrix {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![Gauss::zero(); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

/// Checks the identities that make the contraction an isotopy invariant.
pub fn verify_tensor_axioms(rm: &RMatrixSet) -> Vec<AxiomCheck> {
    let m: GMatrix = rm.m.iter().map(|r| r.to_vec()).collect();
    let mt: GMatrix = (0..2).map(|i| (0..2).map(|j| rm.m[j][i].clone()).collect()).collect();
    let d = Gauss::real(LaurentPoly::loop_value());
    let trace = mat_mul(&m, &mt);
    let loop_value = vec![vec![&trace[0][0] + &trace[1][1]]];
    let id2 = identity(2);
    let mut out = vec![
        check("cancellation of maxima and minima", &mat_mul(&m, &m), &id2),
        check("loop value", &loop_value, &vec![vec![d]]),
        check("second move", &mat_mul(&rm.r_plus, &rm.r_minus), &identity(4)),
        check("second move, reversed", &mat_mul(&rm.r_minus, &rm.r_plus), &identity(4)),
    ];
    // a crossing slides across a maximum, turning a quarter turn
    let slide_l = tangle_matrix(3, &[Event::CrossPlus(1), Event::Cap(0)], rm).expect("valid tangle");
    let slide_r = tangle_matrix(3, &[Event::CrossMinus(0), Event::Cap(1)], rm).expect("valid tangle");
    out.push(check("crossing slides over a maximum", &slide_l, &slide_r));
    // closing the right strand of a crossing leaves a curl
    let curl = |e: Event| tangle_matrix(1, &[Event::Cup(1), e, Event::Cap(1)], rm).expect("valid tangle");
    let minus_a3 = Gauss::real(LaurentPoly::mono(-1, "A", 3));
    let minus_a_3 = Gauss::real(LaurentPoly::mono(-1, "A", -3));
    out.push(check("positive curl", &curl(Event::CrossPlus(0)), &scale(&id2, &minus_a3)));
    out.push(check("negative curl", &curl(Event::CrossMinus(0)), &scale(&id2, &minus_a_3)));
    let r1 = kron(&rm.r_plus, &id2);
    let r2 = kron(&id2, &rm.r_plus);
    let lhs = mat_mul(&mat_mul(&r1, &r2), &r1);
    let rhs = mat_mul(&mat_mul(&r2, &r1), &r2);
    out.push(check("Yang-Baxter", &lhs, &rhs));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::bracket_poly;
    use crate::diagram::Diagram;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn default_axioms_pass() {
        for c in verify_tensor_axioms(&default_rmatrix()) {
            assert!(c.pass, "{}: {:?}", c.name, c.residual);
        }
    }

    #[test]
    fn faults_are_caught() {
        let mut rm = default_rmatrix();
        rm.m[1][0] = Gauss::imag(LaurentPoly::mono(1, "A", -1));
        let checks = verify_tensor_axioms(&RMatrixSet::from_m(rm.m.clone()));
        assert!(!checks[0].pass);
        let mut flat = default_rmatrix();
        flat.r_plus = identity(4);
        flat.r_minus = identity(4);
        let checks = verify_tensor_axioms(&flat);
        let get = |name: &str| checks.iter().find(|c| c.name == name).unwrap().pass;
        assert!(get("Yang-Baxter"));
        assert!(!get("crossing slides over a maximum"));
        assert!(!get("positive curl"));
    }

    #[test]
    fn contractions() {
        let rm = default_rmatrix();
        let circle = compile_morse(1, &[]).unwrap();
        assert_eq!(circle.events, vec![Event::Cup(0), Event::Cap(0)]);
        assert_eq!(contract(&circle, &rm).unwrap(), LaurentPoly::loop_value());
        let t = compile_morse(2, &[1, 1, 1]).unwrap();
        assert_eq!(t.events.len(), 7);
        assert_eq!(contract(&t, &rm).unwrap(), p("-A^5 - A^-3 + A^-7") * LaurentPoly::loop_value());
        let nested = MorseWord { events: vec![Event::Cup(0), Event::Cup(1), Event::Cap(1), Event::Cap(0)] };
        assert_eq!(contract(&nested, &rm).unwrap(), LaurentPoly::loop_value().pow(2));
    }

    #[test]
    fn agrees_with_state_sum() {
        for (n, w) in [(3, &[1, -2, 1, -2][..]), (3, &[1, 1, 1, 2, -1, 2]), (4, &[1, 1, 2, -1, -3, 2, -3])] {
            let b = bracket_poly(&Diagram::from_braid_word(n, w).unwrap()).unwrap();
            let c = contract(&compile_morse(n, w).unwrap(), &default_rmatrix()).unwrap();
            assert_eq!(c, b * LaurentPoly::loop_value());
        }
    }

    #[test]
    fn far_events_commute() {
        let rm = default_rmatrix();
        let a = MorseWord { events: vec![Event::Cup(0), Event::Cup(2), Event::CrossPlus(0), Event::CrossMinus(2), Event::Cap(2), Event::Cap(0)] };
        let b = MorseWord { events: vec![Event::Cup(0), Event::Cup(2), Event::CrossMinus(2), Event::CrossPlus(0), Event::Cap(2), Event::Cap(0)] };
        assert_eq!(contract(&a, &rm).unwrap(), contract(&b, &rm).unwrap());
    }

    #[test]
    fn bad_positions() {
        assert!(matches!(compile_morse(2, &[2]), Err(Error::BadIndex { .. })));
        let w = MorseWord { events: vec![Event::Cap(0)] };
        assert!(matches!(contract(&w, &default_rmatrix()), Err(Error::BadIndex { .. })));
    }
}
