//! Sparse integer matrices, Smith normal form, and determinants over `Z[t]`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse integer matrix; stored entries are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &BigInt) {
        let cur = self.get(i, j) + v;
        self.set(i, j, cur);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut by_row: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); rhs.rows];
        for (&(i, j), v) in &rhs.entries {
            by_row[i].push((j, v));
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for (&(i, k), a) in &self.entries {
            for &(j, b) in &by_row[k] {
                out.add_to(i, j, &(a * b));
            }
        }
        out
    }

    /// Invariant factors via elimination.
    pub fn smith_normal_form(&self) -> SmithForm {
        smith_normal_form(self)
    }

    pub fn rank(&self) -> usize {
        self.smith_normal_form().rank
    }
}

/// Diagonal of the Smith normal form, `d_1 | d_2 | ...`, padded with zeros to `min(rows, cols)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| **d > BigInt::one()).cloned().collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let size = m.rows.min(m.cols);
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    for (&(i, j), v) in &m.entries {
        rows[i].insert(j, v.clone());
        cols[j].insert(i);
    }
    let mut row_alive = vec![true; m.rows];
    let mut col_alive = vec![true; m.cols];
    let mut units = 0usize;

    // Unit pivots first: each one splits off a factor 1 without growing
    // coefficients. Candidates sit in a heap keyed by Markowitz cost; stale
    // costs are refreshed when popped.
    let mut heap: BinaryHeap<Reverse<(usize, usize, usize)>> = BinaryHeap::new();
    let cost = |rows: &[BTreeMap<usize, BigInt>], cols: &[BTreeSet<usize>], i: usize, j: usize| {
        (rows[i].len() - 1) * (cols[j].len() - 1)
    };
    for (i, row) in rows.iter().enumerate() {
        for (&j, v) in row {
            if v.abs().is_one() {
                heap.push(Reverse((cost(&rows, &cols, i, j), i, j)));
            }
        }
    }
    while let Some(Reverse((c0, pi, pj))) = heap.pop() {
        if !row_alive[pi] || !rows[pi].get(&pj).is_some_and(|v| v.abs().is_one()) {
            continue;
        }
        let c = cost(&rows, &cols, pi, pj);
        if c > c0 {
            heap.push(Reverse((c, pi, pj)));
            continue;
        }
        let pivot_row = std::mem::take(&mut rows[pi]);
        let pv = pivot_row[&pj].clone();
        let others: Vec<usize> = cols[pj].iter().copied().filter(|&r| r != pi).collect();
        for r in others {
            let factor = &rows[r][&pj] * &pv; // pv = ±1, so factor/pv = factor*pv
            for (&c, v) in &pivot_row {
                let entry = rows[r].entry(c).or_default();
                *entry -= &factor * v;
                if entry.is_zero() {
                    rows[r].remove(&c);
                    cols[c].remove(&r);
                } else {
                    cols[c].insert(r);
                }
            }
            for &c in pivot_row.keys() {
                if rows[r].get(&c).is_some_and(|v| v.abs().is_one()) {
                    heap.push(Reverse((cost(&rows, &cols, r, c), r, c)));
                }
            }
        }
        for &c in pivot_row.keys() {
            cols[c].remove(&pi);
        }
        row_alive[pi] = false;
        col_alive[pj] = false;
        units += 1;
    }

    let live_rows: Vec<usize> = (0..m.rows).filter(|&i| row_alive[i] && !rows[i].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols).filter(|&j| col_alive[j] && !cols[j].is_empty()).collect();
    let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut dense: Vec<Vec<BigInt>> = live_rows
        .iter()
        .map(|&i| {
            let mut r = vec![BigInt::zero(); live_cols.len()];
            for (c, v) in &rows[i] {
                r[col_pos[c]] = v.clone();
            }
            r
        })
        .collect();
    let mut diagonal: Vec<BigInt> = vec![BigInt::one(); units];
    diagonal.extend(dense_snf(&mut dense));
    let rank = diagonal.len();
    diagonal.resize(size, BigInt::zero());
    SmithForm { diagonal, rank }
}

/// Smith form of a dense matrix with minimal-absolute-value pivoting; returns the nonzero factors.
fn dense_snf(a: &mut [Vec<BigInt>]) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, v) in row.iter().enumerate().skip(t) {
                    if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { return out };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                let (head, tail) = a.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[t]).skip(t) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for row in a.iter_mut().skip(t) {
                    let s = &q * &row[t];
                    row[j] -= s;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| a[i].iter().skip(t + 1).any(|v| !v.is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in head[t].iter_mut().zip(&tail[0]).skip(t) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

/// Dense polynomial over `Z` in one variable, coefficients low degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZPoly(pub Vec<BigInt>);

impl ZPoly {
    pub fn trim(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::default();
        }
        let mut r = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        ZPoly(r).trim()
    }

    fn sub(&self, o: &ZPoly) -> ZPoly {
        let n = self.0.len().max(o.0.len());
        let mut r = vec![BigInt::zero(); n];
        for (i, a) in self.0.iter().enumerate() {
            r[i] += a;
        }
        for (i, b) in o.0.iter().enumerate() {
            r[i] -= b;
        }
        ZPoly(r).trim()
    }

    /// Exact division; panics if `d` does not divide `self`.
    fn div_exact(&self, d: &ZPoly) -> ZPoly {
        let d = d.clone().trim();
        let mut rem = self.clone().trim();
        if rem.0.is_empty() {
            return ZPoly::default();
        }
        let dl = d.0.len();
        let lead = d.0.last().expect("division by zero polynomial").clone();
        let mut q = vec![BigInt::zero(); rem.0.len().saturating_sub(dl) + 1];
        while rem.0.len() >= dl && !rem.0.is_empty() {
            let shift = rem.0.len() - dl;
            let (c, r) = rem.0.last().unwrap().div_rem(&lead);
            assert!(r.is_zero(), "inexact polynomial division");
            for (i, dc) in d.0.iter().enumerate() {
                rem.0[shift + i] -= &c * dc;
            }
            q[shift] = c;
            rem = rem.trim();
        }
        assert!(rem.is_zero(), "inexact polynomial division");
        ZPoly(q).trim()
    }
}

/// Determinant of a square matrix over `Z[t]` by fraction-free (Bareiss) elimination.
pub fn zpoly_det(m: &[Vec<ZPoly>]) -> ZPoly {
    let n = m.len();
    if n == 0 {
        return ZPoly(vec![BigInt::one()]);
    }
    let mut a: Vec<Vec<ZPoly>> = m.iter().map(|r| r.iter().map(|x| x.clone().trim()).collect()).collect();
    let mut sign = false;
    let mut prev = ZPoly(vec![BigInt::one()]);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return ZPoly::default(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        ZPoly(det.0.into_iter().map(|c| -c).collect())
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(IntMatrix::identity(2).smith_normal_form().diagonal, diag(&[1, 1]));
        let m = IntMatrix::from_dense(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(m.smith_normal_form().diagonal, diag(&[2, 4]));
        let z = IntMatrix::zeros(3, 2).smith_normal_form();
        assert_eq!(z.diagonal, diag(&[0, 0]));
        assert_eq!(z.rank, 0);
    }

    #[test]
    fn snf_torsion_and_divisibility() {
        let m = IntMatrix::from_dense(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 0]]);
        let s = m.smith_normal_form();
        assert_eq!(s.diagonal, diag(&[1, 6, 0]));
        assert_eq!(s.torsion(), diag(&[6]));
        let m = IntMatrix::from_dense(&[vec![1, 2], vec![3, 4], vec![5, 6]]);
        assert_eq!(m.smith_normal_form().diagonal, diag(&[1, 2]));
    }

    #[test]
    fn product() {
        let a = IntMatrix::from_dense(&[vec![1, 2], vec![0, 1]]);
        let b = IntMatrix::from_dense(&[vec![1, -2], vec![0, 1]]);
        assert_eq!(a.mul(&b), IntMatrix::identity(2));
    }

    #[test]
    fn bareiss_determinant() {
        let p = |v: &[i64]| ZPoly(diag(v));
        // [[t, -1], [1, t]] -> t^2 + 1
        let m = vec![vec![p(&[0, 1]), p(&[-1])], vec![p(&[1]), p(&[0, 1])]];
        assert_eq!(zpoly_det(&m), p(&[1, 0, 1]));
        // needs a row swap
        let m = vec![vec![p(&[]), p(&[1])], vec![p(&[1]), p(&[2])]];
        assert_eq!(zpoly_det(&m), p(&[-1]));
        assert_eq!(zpoly_det(&[]), p(&[1]));
    }
}
