//! Small reference computations that share no code with the library.
//!
//! Polynomials are `BTreeMap<exponent, coefficient>` in a single variable.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Poly = BTreeMap<i64, i64>;

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(*e).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn poly(terms: &[(i64, i64)]) -> Poly {
    add(&Poly::new(), &terms.iter().map(|&(e, c)| (e, c)).collect())
}

/// `X(i,j,k,l)` for a classical crossing with `i` the incoming under edge, or
/// `V(i,j,k,l)` for a virtual one, labels counterclockwise.
#[derive(Clone, Copy, Debug)]
pub struct Cross {
    pub virt: bool,
    pub l: [usize; 4],
}

pub fn parse_pd(text: &str) -> Vec<Cross> {
    let mut out = Vec::new();
    for part in text.split(')').map(str::trim).filter(|s| !s.is_empty()) {
        let (head, nums) = part.split_once('(').expect("X( or V(");
        let v: Vec<usize> = nums.split(',').map(|s| s.trim().parse().expect("label")).collect();
        out.push(Cross { virt: head.trim() == "V", l: [v[0], v[1], v[2], v[3]] });
    }
    out
}

fn find(p: &mut BTreeMap<usize, usize>, x: usize) -> usize {
    let mut r = x;
    while p[&r] != r {
        r = p[&r];
    }
    p.insert(x, r);
    r
}

fn loops(pairs: &[(usize, usize)]) -> usize {
    let mut p: BTreeMap<usize, usize> = BTreeMap::new();
    for &(a, b) in pairs {
        p.entry(a).or_insert(a);
        p.entry(b).or_insert(b);
    }
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut p, a), find(&mut p, b));
        p.insert(ra, rb);
    }
    let keys: Vec<usize> = p.keys().copied().collect();
    let mut roots: Vec<usize> = keys.into_iter().map(|k| find(&mut p, k)).collect();
    roots.sort();
    roots.dedup();
    roots.len()
}

/// Kauffman bracket by brute force over states.
pub fn bracket(pd: &[Cross]) -> Poly {
    let classical: Vec<&Cross> = pd.iter().filter(|c| !c.virt).collect();
    let d = poly(&[(2, -1), (-2, -1)]);
    let mut total = Poly::new();
    for mask in 0..1u64 << classical.len() {
        let mut pairs = Vec::new();
        let mut a_minus_b = 0;
        for (k, c) in classical.iter().enumerate() {
            let [i, j, kk, l] = c.l;
            if mask >> k & 1 == 0 {
                // A: the smoothing that opens a channel between the regions the
                // over strand sweeps turning counterclockwise
                pairs.extend([(i, j), (kk, l)]);
                a_minus_b += 1;
            } else {
                pairs.extend([(i, l), (j, kk)]);
                a_minus_b -= 1;
            }
        }
        for c in pd.iter().filter(|c| c.virt) {
            pairs.extend([(c.l[0], c.l[2]), (c.l[1], c.l[3])]);
        }
        let mut term = poly(&[(a_minus_b, 1)]);
        for _ in 1..loops(&pairs) {
            term = mul(&term, &d);
        }
        total = add(&total, &term);
    }
    total
}

/// Writhe of a knot whose edge labels run `1..=2n` along the orientation
/// (virtual crossings included in the count).
pub fn knot_writhe(pd: &[Cross]) -> i64 {
    let n = 2 * pd.len();
    let next = |a: usize| if a == n { 1 } else { a + 1 };
    pd.iter()
        .filter(|c| !c.virt)
        .map(|c| {
            let [_, j, _, l] = c.l;
            // over strand runs l -> j exactly when the sign is positive
            if next(l) == j {
                1
            } else {
                assert_eq!(next(j), l, "labels are not consecutive along the knot");
                -1
            }
        })
        .sum()
}

/// `(-A^3)^(-w) <K>`.
pub fn normalized(pd: &[Cross]) -> Poly {
    let w = knot_writhe(pd);
    let sign = if w % 2 == 0 { 1 } else { -1 };
    mul(&bracket(pd), &poly(&[(-3 * w, sign)]))
}

/// `f` at `A = t^(-1/4)`; exponents of `f` must be multiples of 4.
pub fn jones_from_f(f: &Poly) -> Poly {
    f.iter()
        .map(|(e, c)| {
            assert_eq!(e % 4, 0);
            (-e / 4, *c)
        })
        .collect()
}

/// Coefficients of `x^0..=x^n` in `V(e^x)`.
pub fn exp_series(v: &Poly, n: usize) -> Vec<BigRational> {
    let mut fact = BigInt::from(1);
    (0..=n)
        .map(|k| {
            if k > 0 {
                fact *= k;
            }
            let s: BigInt = v.iter().map(|(e, c)| BigInt::from(*c) * BigInt::from(*e).pow(k as u32)).sum();
            BigRational::new(s, fact.clone())
        })
        .collect()
}

pub fn to_text(p: &Poly, var: &str) -> String {
    p.iter()
        .rev()
        .map(|(e, c)| format!("{c}*{var}^{e}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Alexander polynomial of a braid closure knot at the rational point `t`,
/// from the reduced Burau representation:
/// `det(I - B) (1 - t) / (1 - t^n)`.
pub fn burau_alexander_at(strands: usize, word: &[i64], t: &BigRational) -> BigRational {
    use num_traits::{One, Zero};
    let one = BigRational::one();
    let zero = BigRational::zero();
    let m = strands - 1;
    let id = |k: usize| -> Vec<Vec<BigRational>> {
        (0..k).map(|r| (0..k).map(|c| if r == c { one.clone() } else { zero.clone() }).collect()).collect()
    };
    let mut b = id(m);
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        // generator s_(i+1) acts on row i: e_i -> -t e_i + t e_(i-1) + e_(i+1)
        let mut s = id(m);
        s[i][i] = -t.clone();
        if i > 0 {
            s[i][i - 1] = t.clone();
        }
        if i + 1 < m {
            s[i][i + 1] = one.clone();
        }
        if g < 0 {
            s = inverse(s);
        }
        b = (0..m)
            .map(|r| (0..m).map(|c| (0..m).map(|k| &b[r][k] * &s[k][c]).fold(zero.clone(), |a, x| a + x)).collect())
            .collect();
    }
    let i_minus_b: Vec<Vec<BigRational>> =
        (0..m).map(|r| (0..m).map(|c| if r == c { &one - &b[r][c] } else { -b[r][c].clone() }).collect()).collect();
    let tn = num_traits::pow(t.clone(), strands);
    determinant(i_minus_b) * (&one - t) / (&one - tn)
}

fn inverse(a: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    use num_traits::{One, Zero};
    let n = a.len();
    let mut aug: Vec<Vec<BigRational>> = a
        .into_iter()
        .enumerate()
        .map(|(r, mut row)| {
            row.extend((0..n).map(|c| if r == c { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !aug[r][c].is_zero()).expect("invertible");
        aug.swap(p, c);
        let piv = aug[c][c].clone();
        for x in aug[c].iter_mut() {
            *x /= piv.clone();
        }
        for r in 0..n {
            if r != c && !aug[r][c].is_zero() {
                let f = aug[r][c].clone();
                for k in 0..2 * n {
                    let v = &f * &aug[c][k];
                    aug[r][k] -= v;
                }
            }
        }
    }
    aug.into_iter().map(|row| row[n..].to_vec()).collect()
}

fn determinant(mut a: Vec<Vec<BigRational>>) -> BigRational {
    use num_traits::{One, Zero};
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let v = &f * &a[c][k];
                a[r][k] -= v;
            }
        }
    }
    det
}

/// Catalan numbers by the closed formula.
pub fn catalan(n: u64) -> u64 {
    (0..n).fold(1u64, |acc, k| acc * (2 * n - k) / (k + 1)) / (n + 1)
}
