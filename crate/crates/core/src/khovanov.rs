//! Khovanov homology from the cube of resolutions.
//!
//! A state is a bitmask over the classical crossings (bit set = B-smoothing).
//! Loops carry labels from `V = Z[x]/(x^2)`; a generator is a state plus a
//! labelling, bit `k` set meaning loop `k` carries `x`. Gradings are
//! `i = b - n-` and `j = (#1 - #x) + b + n+ - 2n-`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::bracket::check_cap;
use crate::diagram::Diagram;
use crate::matrix::IntMatrix;
use crate::{Error, LaurentPoly, Result};

pub const DEFAULT_CAP: usize = 12;

struct StateLoops {
    count: usize,
    /// Loop index of every arm; loops numbered by their least arm.
    of_arm: Vec<usize>,
}

fn state_loops(d: &Diagram, cls: &[usize], mask: u64) -> StateLoops {
    let n = d.crossing_count();
    let mut bit = vec![None; n];
    for (k, &c) in cls.iter().enumerate() {
        bit[c] = Some(mask >> k & 1 == 1);
    }
    let partner = |c: usize, s: u8| -> u8 {
        match bit[c] {
            None => (s + 2) % 4,
            Some(false) => [1, 0, 3, 2][s as usize],
            Some(true) => [3, 2, 1, 0][s as usize],
        }
    };
    let mut of_arm = vec![usize::MAX; n * 4];
    let mut count = 0;
    for start in 0..n * 4 {
        if of_arm[start] != usize::MAX {
            continue;
        }
        let mut a = crate::diagram::Arm::new(start / 4, (start % 4) as u8);
        loop {
            of_arm[a.crossing * 4 + a.slot as usize] = count;
            let b = d.link(a);
            of_arm[b.crossing * 4 + b.slot as usize] = count;
            a = crate::diagram::Arm::new(b.crossing, partner(b.crossing, b.slot));
            if of_arm[a.crossing * 4 + a.slot as usize] != usize::MAX {
                break;
            }
        }
        count += 1;
    }
    StateLoops { count: count + d.free_loops(), of_arm }
}

/// The graded chain complex, split by quantum degree.
#[derive(Clone, Debug)]
pub struct KhovanovComplex {
    pub n_plus: usize,
    pub n_minus: usize,
    /// Generators `(state, labelling)` in each bidegree, in a fixed order.
    pub generators: BTreeMap<(i64, i64), Vec<(u64, u64)>>,
    /// Differential from `(i, j)` to `(i + 1, j)`.
    pub differentials: BTreeMap<(i64, i64), IntMatrix>,
}

impl KhovanovComplex {
    pub fn rank(&self, i: i64, j: i64) -> usize {
        self.generators.get(&(i, j)).map_or(0, Vec::len)
    }

    /// Total rank in each homological degree.
    pub fn chain_ranks(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (&(i, _), g) in &self.generators {
            *out.entry(i).or_default() += g.len();
        }
        out
    }

    /// Whether every composite of consecutive differentials vanishes.
    pub fn is_complex(&self) -> bool {
        self.differentials.iter().all(|(&(i, j), m)| match self.differentials.get(&(i + 1, j)) {
            Some(next) => next.mul(m).is_zero(),
            None => true,
        })
    }
}

pub fn build_complex(d: &Diagram) -> Result<KhovanovComplex> {
    build_complex_capped(d, DEFAULT_CAP)
}

pub fn build_complex_capped(d: &Diagram, cap: usize) -> Result<KhovanovComplex> {
    if !d.is_oriented() {
        return Err(Error::Unoriented);
    }
    if !d.is_classical() {
        return Err(Error::NonPlanar);
    }
    check_cap(d, cap)?;
    let cls = d.classical_indices();
    let n = cls.len();
    let (n_plus, n_minus) = d.signed_counts();
    let states: Vec<StateLoops> = (0..1u64 << n).into_par_iter().map(|m| state_loops(d, &cls, m)).collect();
    let grade = |mask: u64, lab: u64, loops: usize| -> (i64, i64) {
        let b = mask.count_ones() as i64;
        let xs = lab.count_ones() as i64;
        let ones = loops as i64 - xs;
        (b - n_minus as i64, ones - xs + b + n_plus as i64 - 2 * n_minus as i64)
    };
    let mut generators: BTreeMap<(i64, i64), Vec<(u64, u64)>> = BTreeMap::new();
    for (mask, st) in states.iter().enumerate() {
        for lab in 0..1u64 << st.count {
            generators.entry(grade(mask as u64, lab, st.count)).or_default().push((mask as u64, lab));
        }
    }
    let index: BTreeMap<(u64, u64), usize> = generators
        .values()
        .flat_map(|g| g.iter().enumerate().map(|(k, &x)| (x, k)))
        .collect();
    let mut differentials: BTreeMap<(i64, i64), IntMatrix> = BTreeMap::new();
    for (&(i, j), gens) in &generators {
        let Some(targets) = generators.get(&(i + 1, j)) else { continue };
        let mut m = IntMatrix::zeros(targets.len(), gens.len());
        for (col, &(mask, lab)) in gens.iter().enumerate() {
            for (k, &c) in cls.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    continue;
                }
                let a_before = (0..k).filter(|&q| mask >> q & 1 == 0).count();
                let sign: i64 = if a_before % 2 == 0 { 1 } else { -1 };
                let target = mask | 1 << k;
                let (src, dst) = (&states[mask as usize], &states[target as usize]);
                for (tlab, coeff) in edge_map(src, dst, c, lab) {
                    let row = index[&(target, tlab)];
                    m.add_to(row, col, &BigInt::from(sign * coeff));
                }
            }
        }
        differentials.insert((i, j), m);
    }
    let cx = KhovanovComplex { n_plus, n_minus, generators, differentials };
    assert!(cx.is_complex(), "differential does not square to zero");
    Ok(cx)
}

/// Image of labelling `lab` under the merge or split at crossing `c`.
fn edge_map(src: &StateLoops, dst: &StateLoops, c: usize, lab: u64) -> Vec<(u64, i64)> {
    let arm = |s: u8| c * 4 + s as usize;
    // loops away from the crossing keep their labels
    let mut base = 0u64;
    let touched_src = [src.of_arm[arm(0)], src.of_arm[arm(2)]];
    for (a, &l) in src.of_arm.iter().enumerate() {
        if touched_src.contains(&l) {
            continue;
        }
        if lab >> l & 1 == 1 {
            base |= 1 << dst.of_arm[a];
        }
    }
    // free loops sit after the arm loops in both states
    let arm_loops_src = src.of_arm.iter().copied().max().map_or(0, |m| m + 1);
    let arm_loops_dst = dst.of_arm.iter().copied().max().map_or(0, |m| m + 1);
    for f in 0..src.count - arm_loops_src {
        if lab >> (arm_loops_src + f) & 1 == 1 {
            base |= 1 << (arm_loops_dst + f);
        }
    }
    let x = |l: usize| lab >> l & 1 == 1;
    if touched_src[0] != touched_src[1] {
        let merged = dst.of_arm[arm(0)];
        match (x(touched_src[0]), x(touched_src[1])) {
            (false, false) => vec![(base, 1)],
            (true, true) => vec![],
            _ => vec![(base | 1 << merged, 1)],
        }
    } else {
        let (p, q) = (dst.of_arm[arm(0)], dst.of_arm[arm(1)]);
        if x(touched_src[0]) {
            vec![(base | 1 << p | 1 << q, 1)]
        } else {
            vec![(base | 1 << p, 1), (base | 1 << q, 1)]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub i: i64,
    pub j: i64,
    pub free: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match i64::try_from(x) {
            Ok(k) => seq.serialize_element(&k)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

/// Nonzero groups only, ordered by `(i, j)`.
pub fn homology(c: &KhovanovComplex) -> Vec<HomologyGroup> {
    let keys: Vec<(i64, i64)> = c.generators.keys().copied().collect();
    let snf: BTreeMap<(i64, i64), (usize, Vec<BigInt>)> = c
        .differentials
        .par_iter()
        .map(|(&k, m)| {
            let s = m.smith_normal_form();
            (k, (s.rank, s.torsion()))
        })
        .collect();
    keys.into_iter()
        .filter_map(|(i, j)| {
            let dim = c.rank(i, j);
            let out_rank = snf.get(&(i, j)).map_or(0, |s| s.0);
            let (in_rank, torsion) = snf.get(&(i - 1, j)).map_or((0, Vec::new()), |s| (s.0, s.1.clone()));
            let free = dim - out_rank - in_rank;
            (free > 0 || !torsion.is_empty()).then_some(HomologyGroup { i, j, free, torsion })
        })
        .collect()
}

/// `sum (-1)^i q^j rank C^{i,j}`.
pub fn graded_euler(c: &KhovanovComplex) -> LaurentPoly {
    c.generators
        .iter()
        .map(|(&(i, j), g)| LaurentPoly::mono(if i % 2 == 0 { 1 } else { -1 } * g.len() as i64, "q", j))
        .sum()
}

/// The same sum over free ranks of homology.
pub fn homology_euler(h: &[HomologyGroup]) -> LaurentPoly {
    h.iter().map(|g| LaurentPoly::mono(if g.i % 2 == 0 { 1 } else { -1 } * g.free as i64, "q", g.j)).sum()
}

/// `q -> -A^-2`.
pub fn euler_in_a(chi: &LaurentPoly) -> LaurentPoly {
    chi.substitute("q", &LaurentPoly::mono(-1, "A", -2)).expect("monomial substitution")
}

/// Text grid: rows are `j` from high to low, columns `i`.
pub fn homology_grid(h: &[HomologyGroup]) -> String {
    if h.is_empty() {
        return String::from("(zero)\n");
    }
    let is: Vec<i64> = h.iter().map(|g| g.i).collect();
    let js: Vec<i64> = h.iter().map(|g| g.j).collect();
    let (i0, i1) = (*is.iter().min().unwrap(), *is.iter().max().unwrap());
    let (j0, j1) = (*js.iter().min().unwrap(), *js.iter().max().unwrap());
    let cell = |i: i64, j: i64| -> String {
        let Some(g) = h.iter().find(|g| g.i == i && g.j == j) else { return ".".into() };
        let mut parts = Vec::new();
        if g.free > 0 {
            parts.push(if g.free == 1 { "Z".to_string() } else { format!("Z^{}", g.free) });
        }
        parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
        parts.join("+")
    };
    let mut out = format!("{:>5} |", "j\\i");
    for i in i0..=i1 {
        out.push_str(&format!(" {i:>8}"));
    }
    out.push('\n');
    for j in (j0..=j1).rev() {
        if (j - j0) % 2 != 0 {
            continue;
        }
        out.push_str(&format!("{j:>5} |"));
        for i in i0..=i1 {
            out.push_str(&format!(" {:>8}", cell(i, j)));
        }
        out.push('\n');
    }
    out
}

/// Chain ranks by cube height `b` for `D`, for `D` with crossing `c` A-smoothed,
/// and for `D` with `c` B-smoothed shifted up by one. The first is the sum of the other two.
pub fn cone_ranks(d: &Diagram, c: usize) -> Result<[BTreeMap<i64, usize>; 3]> {
    use crate::diagram::Smoothing;
    if !d.is_classical() {
        return Err(Error::NonPlanar);
    }
    check_cap(d, DEFAULT_CAP)?;
    let count = |dd: &Diagram, shift: i64| -> BTreeMap<i64, usize> {
        let cls = dd.classical_indices();
        let mut out = BTreeMap::new();
        for mask in 0..1u64 << cls.len() {
            let loops = dd.loop_count_mask(&cls, mask);
            *out.entry(mask.count_ones() as i64 + shift).or_default() += 1usize << loops;
        }
        out
    };
    let u = d.clone().forget_orientation();
    let ka = u.splice(&[(c, Smoothing::A.pairs())]);
    let kb = u.splice(&[(c, Smoothing::B.pairs())]);
    Ok([count(d, 0), count(&ka, 0), count(&kb, 1)])
}

type Mat = Vec<Vec<i64>>;

fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ra, ca, rb, cb) = (a.len(), a[0].len(), b.len(), b[0].len());
    (0..ra * rb).map(|i| (0..ca * cb).map(|j| a[i / rb][j / cb] * b[i % rb][j % cb]).collect()).collect()
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    (0..a.len()).map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// The algebra `V = Z[x]/(x^2)` on the basis `(1, x)`: unit, counit, `m`, `Δ`.
pub fn frobenius_maps() -> [Mat; 4] {
    let unit = vec![vec![1], vec![0]];
    let counit = vec![vec![0, 1]];
    // basis of V⊗V: 11, 1x, x1, xx
    let m = vec![vec![1, 0, 0, 0], vec![0, 1, 1, 0]];
    let delta = vec![vec![0, 0], vec![1, 0], vec![1, 0], vec![0, 1]];
    [unit, counit, m, delta]
}

/// Associativity, coassociativity, unit and counit laws, commutativity, and the Frobenius identity.
pub fn verify_frobenius() -> Vec<(String, bool)> {
    let [unit, counit, m, delta] = frobenius_maps();
    let id: Mat = vec![vec![1, 0], vec![0, 1]];
    let swap: Mat = vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 1]];
    vec![
        ("associativity".into(), mat_mul(&m, &kron(&m, &id)) == mat_mul(&m, &kron(&id, &m))),
        ("coassociativity".into(), mat_mul(&kron(&delta, &id), &delta) == mat_mul(&kron(&id, &delta), &delta)),
        ("unit".into(), mat_mul(&m, &kron(&unit, &id)) == id && mat_mul(&m, &kron(&id, &unit)) == id),
        ("counit".into(), mat_mul(&kron(&counit, &id), &delta) == id && mat_mul(&kron(&id, &counit), &delta) == id),
        ("commutativity".into(), mat_mul(&m, &swap) == m && mat_mul(&swap, &delta) == delta),
        (
            "Frobenius identity".into(),
            mat_mul(&delta, &m) == mat_mul(&kron(&m, &id), &kron(&id, &delta))
                && mat_mul(&delta, &m) == mat_mul(&kron(&id, &m), &kron(&delta, &id)),
        ),
        ("counit of unit".into(), mat_mul(&counit, &unit) == vec![vec![0]]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::normalized_jones;

    fn braid(n: usize, w: &[i64]) -> Diagram {
        Diagram::from_braid_word(n, w).unwrap()
    }

    fn table(h: &[HomologyGroup]) -> Vec<(i64, i64, usize, Vec<i64>)> {
        h.iter()
            .map(|g| (g.i, g.j, g.free, g.torsion.iter().map(|t| i64::try_from(t).unwrap()).collect()))
            .collect()
    }

    #[test]
    fn frobenius_algebra() {
        assert!(verify_frobenius().iter().all(|(_, ok)| *ok), "{:?}", verify_frobenius());
        let [_, _, m, delta] = frobenius_maps();
        // m(Δ(1)) = 2x
        assert_eq!(mat_mul(&m, &delta), vec![vec![0, 0], vec![2, 0]]);
    }

    #[test]
    fn unknot() {
        let c = build_complex(&Diagram::unknot()).unwrap();
        assert_eq!(table(&homology(&c)), vec![(0, -1, 1, vec![]), (0, 1, 1, vec![])]);
        assert_eq!(graded_euler(&c), "q + q^-1".parse().unwrap());
    }

    #[test]
    fn trefoil() {
        let c = build_complex(&braid(2, &[1, 1, 1])).unwrap();
        let ranks: Vec<usize> = c.chain_ranks().into_values().collect();
        assert_eq!(ranks, vec![4, 6, 12, 8]);
        let h = homology(&c);
        assert_eq!(
            table(&h),
            vec![(0, 1, 1, vec![]), (0, 3, 1, vec![]), (2, 5, 1, vec![]), (3, 7, 0, vec![2]), (3, 9, 1, vec![])]
        );
        let chi = graded_euler(&c);
        assert_eq!(chi, homology_euler(&h));
        let f = normalized_jones(&braid(2, &[1, 1, 1])).unwrap().f;
        assert_eq!(euler_in_a(&chi), f * LaurentPoly::loop_value());
    }

    #[test]
    fn hopf() {
        let c = build_complex(&braid(2, &[1, 1])).unwrap();
        let h = homology(&c);
        assert_eq!(table(&h), vec![(0, 0, 1, vec![]), (0, 2, 1, vec![]), (2, 4, 1, vec![]), (2, 6, 1, vec![])]);
        assert_eq!(graded_euler(&c), "1 + q^2 + q^4 + q^6".parse().unwrap());
    }

    #[test]
    fn euler_identity_on_small_knots() {
        for (n, w) in [(3, &[1, -2, 1, -2][..]), (3, &[1, 1, 1, 2, -1, 2]), (3, &[1, 1, -2, 1, -2, -2])] {
            let d = braid(n, w);
            let c = build_complex(&d).unwrap();
            let chi = graded_euler(&c);
            assert_eq!(chi, homology_euler(&homology(&c)));
            assert_eq!(euler_in_a(&chi), normalized_jones(&d).unwrap().f * LaurentPoly::loop_value());
        }
    }

    #[test]
    fn cone_counts() {
        let d = braid(3, &[1, -2, 1, -2]);
        let [total, a, b] = cone_ranks(&d, 0).unwrap();
        for (k, v) in total {
            assert_eq!(v, a.get(&k).copied().unwrap_or(0) + b.get(&k).copied().unwrap_or(0));
        }
    }
}
