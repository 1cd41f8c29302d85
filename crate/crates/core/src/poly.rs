//! Multivariate Laurent polynomials with integer coefficients.
//!
//! Exponents live on a quarter-integer grid: each exponent is stored as an
//! integer count of quarter units, so `A -> t^(-1/4)` is exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::{Error, Result};

/// Denominator of the exponent grid.
pub const EDENOM: i64 = 4;

/// Exact Laurent polynomial over `Z` in named variables.
///
/// Variables are kept sorted alphabetically and a variable is dropped as soon
/// as it no longer occurs, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Self { vars: Vec::new(), terms }
    }

    /// `coeff * var^exp` with an integer exponent.
    pub fn mono(coeff: impl Into<BigInt>, var: &str, exp: i64) -> Self {
        Self::mono_q(coeff, var, exp * EDENOM)
    }

    /// `coeff * var^(quarters/4)`.
    pub fn mono_q(coeff: impl Into<BigInt>, var: &str, quarters: i64) -> Self {
        Self::monomial(coeff, &[(var, quarters)])
    }

    /// General monomial; exponents given in quarter units.
    pub fn monomial(coeff: impl Into<BigInt>, factors: &[(&str, i64)]) -> Self {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut by_var: BTreeMap<String, i64> = BTreeMap::new();
        for (v, e) in factors {
            *by_var.entry((*v).to_string()).or_insert(0) += e;
        }
        let vars: Vec<String> = by_var.keys().cloned().collect();
        let exps: Vec<i64> = by_var.values().copied().collect();
        let mut p = Self { vars, terms: BTreeMap::new() };
        p.terms.insert(exps, coeff);
        p.normalize();
        p
    }

    pub fn var(name: &str) -> Self {
        Self::mono(1, name, 1)
    }

    /// Loop value `d = -A^2 - A^-2`.
    pub fn loop_value() -> Self {
        Self::mono(-1, "A", 2) + Self::mono(-1, "A", -2)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains_var(&self, name: &str) -> bool {
        self.vars.iter().any(|v| v == name)
    }

    /// Terms in canonical (ascending lexicographic) order, exponents in quarter units.
    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Coefficient of the monomial with the given quarter exponents (missing vars = 0).
    pub fn coeff(&self, factors: &[(&str, i64)]) -> BigInt {
        let mut key = vec![0; self.vars.len()];
        for (v, e) in factors {
            match self.vars.iter().position(|x| x == v) {
                Some(i) => key[i] += e,
                None if *e == 0 => {}
                None => return BigInt::zero(),
            }
        }
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    /// `(quarter exponent, coefficient)` pairs of a polynomial in at most `var`.
    pub fn univariate(&self, var: &str) -> Result<Vec<(i64, BigInt)>> {
        if self.vars.iter().any(|v| v != var) {
            return Err(Error::SignatureMismatch(format!(
                "expected a polynomial in {var}, found variables {:?}",
                self.vars
            )));
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| (e.first().copied().unwrap_or(0), c.clone()))
            .collect())
    }

    /// Lowest and highest quarter exponent of `var`, if the polynomial is nonzero.
    pub fn degree_range(&self, var: &str) -> Option<(i64, i64)> {
        let i = self.vars.iter().position(|v| v == var);
        let it = self.terms.keys().map(|e| i.map_or(0, |i| e[i]));
        let lo = it.clone().min()?;
        let hi = it.max()?;
        Some((lo, hi))
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        let n = self.vars.len();
        let used: Vec<bool> = (0..n).map(|i| self.terms.keys().any(|e| e[i] != 0)).collect();
        let sorted = self.vars.windows(2).all(|w| w[0] < w[1]);
        if used.iter().all(|&u| u) && sorted {
            return;
        }
        let mut order: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        order.sort_by(|&a, &b| self.vars[a].cmp(&self.vars[b]));
        let vars = order.iter().map(|&i| self.vars[i].clone()).collect();
        let mut terms = BTreeMap::new();
        for (e, c) in std::mem::take(&mut self.terms) {
            let k: Vec<i64> = order.iter().map(|&i| e[i]).collect();
            let slot: &mut BigInt = terms.entry(k).or_default();
            *slot += c;
        }
        terms.retain(|_, c: &mut BigInt| !c.is_zero());
        self.vars = vars;
        self.terms = terms;
    }

    fn with_vars(&self, vars: &[String]) -> BTreeMap<Vec<i64>, BigInt> {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("superset"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut k = vec![0; vars.len()];
                for (j, &i) in idx.iter().enumerate() {
                    k[i] = e[j];
                }
                (k, c.clone())
            })
            .collect()
    }

    fn union_vars(&self, other: &Self) -> Vec<String> {
        let mut v: Vec<String> = self.vars.iter().chain(other.vars.iter()).cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Exact quotient by a polynomial in `var` whose top coefficient is a unit.
    pub fn div_exact(&self, divisor: &LaurentPoly, var: &str) -> Option<LaurentPoly> {
        let d = divisor.univariate(var).ok()?;
        let (d_lo, d_hi) = (d.first()?.0, d.last()?.0);
        let lead = d.last()?.1.clone();
        if !lead.abs().is_one() {
            return None;
        }
        let floor = self.degree_range(var).map_or(0, |r| r.0) - d_lo;
        let mut rem = self.clone();
        let mut q = LaurentPoly::zero();
        while !rem.is_zero() {
            let r = rem.univariate(var).ok()?;
            let (top, c) = r.last()?.clone();
            let e = top - d_hi;
            if e < floor {
                return None;
            }
            let t = LaurentPoly::mono_q(c * &lead, var, e);
            rem = &rem - &(&t * divisor);
            q += &t;
        }
        Some(q)
    }

    /// Multiplies by `var^(quarters/4)`.
    pub fn shift(&self, var: &str, quarters: i64) -> Self {
        self * &Self::mono_q(1, var, quarters)
    }

    /// Integer power; negative powers are only defined for monomials with unit coefficient.
    pub fn pow(&self, n: i64) -> Self {
        if n < 0 {
            let (e, c) = self
                .single_term()
                .expect("negative power of a non-monomial");
            assert!(c.abs().is_one(), "negative power of a non-unit monomial");
            let terms = BTreeMap::from([(e.iter().map(|x| -x).collect::<Vec<_>>(), c.clone())]);
            return Self { vars: self.vars.clone(), terms }.pow(-n);
        }
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    fn single_term(&self) -> Option<(&Vec<i64>, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Replaces `var` by `image`.
    ///
    /// A monomial image may meet any exponent as long as the result stays on
    /// the quarter grid (and fractional powers of the coefficient are not
    /// needed); a general polynomial image only meets nonnegative integer powers.
    pub fn substitute(&self, var: &str, image: &LaurentPoly) -> Result<Self> {
        let Some(vi) = self.vars.iter().position(|v| v == var) else {
            return Ok(self.clone());
        };
        let fail = || Error::NonIntegralComposition(var.to_string());
        let rest_vars: Vec<String> = self.vars.clone();
        let mut out = Self::zero();
        if let Some((img_e, img_c)) = image.single_term() {
            for (e, c) in &self.terms {
                let q = e[vi];
                let scaled: Option<Vec<i64>> = img_e
                    .iter()
                    .map(|&ie| {
                        let num = ie * q;
                        (num % EDENOM == 0).then_some(num / EDENOM)
                    })
                    .collect();
                let scaled = scaled.ok_or_else(fail)?;
                let coeff = if img_c.is_one() {
                    c.clone()
                } else if q % EDENOM == 0 && (q >= 0 || img_c.abs().is_one()) {
                    let k = q / EDENOM;
                    // a unit coefficient is its own inverse up to sign parity
                    c * num_traits::pow(img_c.clone(), k.unsigned_abs() as usize)
                } else {
                    return Err(fail());
                };
                let mut rest = e.clone();
                rest[vi] = 0;
                let mut factors: Vec<(&str, i64)> =
                    rest_vars.iter().map(String::as_str).zip(rest.iter().copied()).collect();
                factors.extend(image.vars.iter().map(String::as_str).zip(scaled.iter().copied()));
                out += &Self::monomial(coeff, &factors);
            }
            return Ok(out);
        }
        // General image: expand integer powers, cached.
        let mut powers: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let q = e[vi];
            if q < 0 || q % EDENOM != 0 {
                return Err(fail());
            }
            let k = q / EDENOM;
            let pk = powers.entry(k).or_insert_with(|| image.pow(k)).clone();
            let mut rest = e.clone();
            rest[vi] = 0;
            let factors: Vec<(&str, i64)> =
                rest_vars.iter().map(String::as_str).zip(rest.iter().copied()).collect();
            out += &(&Self::monomial(c.clone(), &factors) * &pk);
        }
        Ok(out)
    }

    /// Coefficients `c_0..=c_nmax` of `p(e^x)` as a power series in `x`.
    pub fn series_coeffs(&self, var: &str, n_max: usize) -> Result<Vec<BigRational>> {
        let terms = self.univariate(var)?;
        let mut out = Vec::with_capacity(n_max + 1);
        let mut fact = BigInt::one();
        for k in 0..=n_max {
            if k > 0 {
                fact *= k;
            }
            let mut sum = BigRational::zero();
            for (q, c) in &terms {
                let e = BigRational::new(BigInt::from(*q), BigInt::from(EDENOM));
                sum += num_traits::pow(e, k) * BigRational::from_integer(c.clone());
            }
            out.push(sum / BigRational::from_integer(fact.clone()));
        }
        Ok(out)
    }

    /// Swaps `var -> var^-1`.
    pub fn invert_var(&self, var: &str) -> Self {
        let Some(i) = self.vars.iter().position(|v| v == var) else {
            return self.clone();
        };
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e[i] = -e[i];
                (e, c.clone())
            })
            .collect();
        Self { vars: self.vars.clone(), terms }
    }

    /// Canonical JSON form.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let c = match c.to_i64() {
                    Some(v) => json!(v),
                    None => json!(c.to_string()),
                };
                json!({ "e": e, "c": c })
            })
            .collect();
        json!({ "vars": self.vars, "edenom": EDENOM, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("polynomial json: {m}"));
        let vars: Vec<String> = v["vars"]
            .as_array()
            .ok_or_else(|| bad("missing vars"))?
            .iter()
            .map(|x| x.as_str().map(str::to_string).ok_or_else(|| bad("var not a string")))
            .collect::<Result<_>>()?;
        let denom = v.get("edenom").and_then(Value::as_i64).unwrap_or(EDENOM);
        if denom <= 0 || EDENOM % denom != 0 {
            return Err(bad("unsupported edenom"));
        }
        let mut p = Self::zero();
        for t in v["terms"].as_array().ok_or_else(|| bad("missing terms"))? {
            let e: Vec<i64> = t["e"]
                .as_array()
                .ok_or_else(|| bad("missing e"))?
                .iter()
                .map(|x| x.as_i64().map(|x| x * (EDENOM / denom)).ok_or_else(|| bad("bad exponent")))
                .collect::<Result<_>>()?;
            if e.len() != vars.len() {
                return Err(bad("exponent length"));
            }
            let c: BigInt = match &t["c"] {
                Value::Number(n) => n.as_i64().ok_or_else(|| bad("bad coefficient"))?.into(),
                Value::String(s) => s.parse().map_err(|_| bad("bad coefficient"))?,
                _ => return Err(bad("bad coefficient")),
            };
            let f: Vec<(&str, i64)> = vars.iter().map(String::as_str).zip(e).collect();
            p += &Self::monomial(c, &f);
        }
        Ok(p)
    }
}

fn fmt_exp(q: i64) -> String {
    if q % EDENOM == 0 {
        format!("{}", q / EDENOM)
    } else {
        let g = num_integer::gcd(q.abs(), EDENOM);
        format!("({}/{})", q / g, EDENOM / g)
    }
}

impl fmt::Display for LaurentPoly {
    /// Signed monomials in descending order, e.g. `-t^4 + t^3 + t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let factors: Vec<String> = self
                .vars
                .iter()
                .zip(e)
                .filter(|(_, &q)| q != 0)
                .map(|(v, &q)| if q == EDENOM { v.clone() } else { format!("{v}^{}", fmt_exp(q)) })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the text form produced by `Display` (`2*a^-2*z^2 - t^(1/2) + 3`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("polynomial text: {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut out = Self::zero();
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        let mut depth = 0;
        for ch in compact.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            let is_sep = (ch == '+' || ch == '-') && depth == 0 && !matches!(prev, Some('^') | None);
            if is_sep {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '-' || ch == '+') && prev.is_none() {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        terms.push((neg, cur));
        for (neg, body) in terms {
            if body.is_empty() {
                return Err(bad());
            }
            let mut coeff = BigInt::one();
            let mut factors: Vec<(String, i64)> = Vec::new();
            for factor in body.split('*') {
                if factor.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                    coeff *= factor.parse::<BigInt>().map_err(|_| bad())?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    None => (factor, EDENOM),
                    Some((name, e)) => {
                        let e = e.trim_start_matches('(').trim_end_matches(')');
                        let q = match e.split_once('/') {
                            None => e.parse::<i64>().map_err(|_| bad())? * EDENOM,
                            Some((n, d)) => {
                                let n: i64 = n.parse().map_err(|_| bad())?;
                                let d: i64 = d.parse().map_err(|_| bad())?;
                                if d <= 0 || EDENOM % d != 0 {
                                    return Err(bad());
                                }
                                n * (EDENOM / d)
                            }
                        };
                        (name, q)
                    }
                };
                if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(bad());
                }
                factors.push((name.to_string(), exp));
            }
            if neg {
                coeff = -coeff;
            }
            let f: Vec<(&str, i64)> = factors.iter().map(|(n, e)| (n.as_str(), *e)).collect();
            out += &Self::monomial(coeff, &f);
        }
        Ok(out)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        if self.vars == rhs.vars {
            for (e, c) in &rhs.terms {
                let slot = self.terms.entry(e.clone()).or_default();
                *slot += c;
            }
            let vars_before = self.vars.len();
            self.normalize();
            debug_assert!(self.vars.len() <= vars_before);
            return;
        }
        let vars = self.union_vars(rhs);
        let mut terms = self.with_vars(&vars);
        for (e, c) in rhs.with_vars(&vars) {
            *terms.entry(e).or_default() += c;
        }
        self.vars = vars;
        self.terms = terms;
        self.normalize();
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let vars = self.union_vars(rhs);
        let a = self.with_vars(&vars);
        let b = rhs.with_vars(&vars);
        let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *terms.entry(e).or_default() += ca * cb;
            }
        }
        let mut out = LaurentPoly { vars, terms };
        out.normalize();
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

/// Serializes a polynomial as its display text.
pub fn serialize_text<S: serde::Serializer>(p: &LaurentPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}
