//! Chord diagrams, the four-term relation, Lie algebra weight systems, and
//! the finite-type coefficients of the Jones polynomial at `t = e^x`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::bracket::normalized_jones;
use crate::diagram::Diagram;
use crate::{Error, Result};

pub const MAX_FOURTERM_DEGREE: usize = 6;
pub const MAX_NODES: usize = 12;

/// A diagram with some classical crossings flagged as rigid nodes.
#[derive(Clone, Debug)]
pub struct NodalDiagram {
    pub diagram: Diagram,
    pub nodes: BTreeSet<usize>,
}

impl NodalDiagram {
    pub fn new(diagram: Diagram, nodes: impl IntoIterator<Item = usize>) -> Result<Self> {
        let nodes: BTreeSet<usize> = nodes.into_iter().collect();
        for &c in &nodes {
            if c >= diagram.crossing_count() {
                return Err(Error::InconsistentCode(format!("node {c} out of range")));
            }
            if diagram.crossings()[c].is_virtual() {
                return Err(Error::InconsistentCode(format!("node {c} is a virtual crossing")));
            }
        }
        Ok(Self { diagram, nodes })
    }

    /// Every classical crossing flagged.
    pub fn all(diagram: Diagram) -> Self {
        let nodes = diagram.classical_indices().into_iter().collect();
        Self { diagram, nodes }
    }
}

/// A cyclic word in which every chord label occurs twice.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct ChordDiagram {
    pub word: Vec<u8>,
}

fn relabel(word: &[u8]) -> Vec<u8> {
    let mut map = BTreeMap::new();
    word.iter()
        .map(|w| {
            let next = map.len() as u8 + 1;
            *map.entry(*w).or_insert(next)
        })
        .collect()
}

impl ChordDiagram {
    /// Canonical form: least relabelled rotation.
    pub fn new(word: &[u8]) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for w in word {
            *counts.entry(w).or_insert(0) += 1;
        }
        if let Some((w, k)) = counts.iter().find(|(_, &k)| k != 2) {
            return Err(Error::Parse(format!("chord label {w} occurs {k} times")));
        }
        Ok(Self::canonical(word))
    }

    fn canonical(word: &[u8]) -> Self {
        let n = word.len();
        let best = (0..n.max(1))
            .map(|r| relabel(&word.iter().cycle().skip(r).take(n).copied().collect::<Vec<_>>()))
            .min()
            .unwrap_or_default();
        Self { word: best }
    }

    /// Canonical form up to rotation and reflection.
    pub fn canonical_with_reflection(&self) -> Self {
        let rev: Vec<u8> = self.word.iter().rev().copied().collect();
        self.clone().min(Self::canonical(&rev))
    }

    pub fn degree(&self) -> usize {
        self.word.len() / 2
    }

    /// All diagrams of degree `n`, canonical and sorted.
    pub fn all(n: usize) -> Vec<ChordDiagram> {
        let mut out = BTreeSet::new();
        let mut word = vec![0u8; 2 * n];
        fn fill(word: &mut [u8], label: u8, out: &mut BTreeSet<ChordDiagram>) {
            let Some(first) = word.iter().position(|&w| w == 0) else {
                out.insert(ChordDiagram::canonical(word));
                return;
            };
            word[first] = label;
            for k in first + 1..word.len() {
                if word[k] == 0 {
                    word[k] = label;
                    fill(word, label + 1, out);
                    word[k] = 0;
                }
            }
            word[first] = 0;
        }
        fill(&mut word, 1, &mut out);
        out.into_iter().collect()
    }

    /// Positions of the two ends of each chord, indexed by label - 1.
    fn ends(&self) -> Vec<[usize; 2]> {
        let mut e = vec![[usize::MAX; 2]; self.degree()];
        for (k, &w) in self.word.iter().enumerate() {
            let slot = &mut e[w as usize - 1];
            if slot[0] == usize::MAX {
                slot[0] = k;
            } else {
                slot[1] = k;
            }
        }
        e
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &w in &self.word {
            let c = if w < 10 { (b'0' + w) as char } else { (b'a' + w - 10) as char };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for ChordDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let word: Result<Vec<u8>> = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '1'..='9' => Ok(c as u8 - b'0'),
                'a'..='z' => Ok(c as u8 - b'a' + 10),
                _ => Err(Error::Parse(format!("bad chord label {c:?}"))),
            })
            .collect();
        ChordDiagram::new(&word?)
    }
}

/// Walks the single component, recording flagged crossings as they are met.
pub fn chord_from_nodal(nd: &NodalDiagram) -> Result<ChordDiagram> {
    chord_from_nodal_at(nd, 0)
}

/// As [`chord_from_nodal`], starting the walk `start` edges along.
pub fn chord_from_nodal_at(nd: &NodalDiagram, start: usize) -> Result<ChordDiagram> {
    let d = &nd.diagram;
    let k = d.component_count();
    if k != 1 {
        return Err(Error::MultiComponent(k));
    }
    let tails = d.edge_tails();
    let comp = d.component_edges().into_iter().next().unwrap_or_default();
    let len = comp.len().max(1);
    let mut word = Vec::new();
    for i in 0..comp.len() {
        let c = d.link(tails[comp[(i + start) % len]]).crossing;
        if nd.nodes.contains(&c) {
            word.push(u8::try_from(c + 1).map_err(|_| Error::TooManyNodes { nodes: c + 1, limit: 255 })?);
        }
    }
    ChordDiagram::new(&word)
}

/// One four-term relation: the signed sum of the four diagrams vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FourTerm {
    pub terms: [(i64, ChordDiagram); 4],
}

impl FourTerm {
    /// The relation as a reduced linear combination.
    pub fn combination(&self) -> BTreeMap<ChordDiagram, i64> {
        let mut m = BTreeMap::new();
        for (s, d) in &self.terms {
            *m.entry(d.clone()).or_insert(0) += s;
        }
        m.retain(|_, v| *v != 0);
        m
    }
}

/// Relations from sliding one end of a chord `b` past either end of a chord `a`:
/// `D(b before P) - D(b after P) + D(b before Q) - D(b after Q) = 0`.
pub fn four_term_relations(n: usize) -> Result<Vec<FourTerm>> {
    if n > MAX_FOURTERM_DEGREE {
        return Err(Error::DegreeTooLarge { degree: n, limit: MAX_FOURTERM_DEGREE });
    }
    if n < 2 {
        return Ok(Vec::new());
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for d in ChordDiagram::all(n) {
        let ends = d.ends();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                for moving in ends[b] {
                    let mut rest = d.word.clone();
                    let label = rest.remove(moving);
                    let pos: Vec<usize> = (0..rest.len()).filter(|&k| rest[k] == a as u8 + 1).collect();
                    let place = |at: usize| {
                        let mut w = rest.clone();
                        w.insert(at, label);
                        ChordDiagram::canonical(&w)
                    };
                    let rel = FourTerm {
                        terms: [(1, place(pos[0])), (-1, place(pos[0] + 1)), (1, place(pos[1])), (-1, place(pos[1] + 1))],
                    };
                    let comb = rel.combination();
                    if comb.is_empty() {
                        continue;
                    }
                    let neg: Vec<(ChordDiagram, i64)> = comb.iter().map(|(k, v)| (k.clone(), -v)).collect();
                    let key = comb.clone().into_iter().collect::<Vec<_>>().min(neg);
                    if seen.insert(key) {
                        out.push(rel);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Lie algebra data: structure constants, a representation, and a metric.
#[derive(Clone, Debug)]
pub struct WeightSystem {
    pub name: String,
    /// `f[a][b][c]` with `[T_a, T_b] = sum_c f[a][b][c] T_c`.
    pub structure: Vec<Vec<Vec<i64>>>,
    pub insertions: Vec<Vec<Vec<i64>>>,
    pub metric: Vec<Vec<i64>>,
}

fn levi_civita(a: usize, b: usize, c: usize) -> i64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

impl WeightSystem {
    /// so(3) in the adjoint representation, `(T_a)_bc = eps_abc`, metric `delta`.
    /// With this sign of `T` the structure constants are `-eps_abc`.
    pub fn so3_adjoint() -> Self {
        let cube = |f: &dyn Fn(usize, usize, usize) -> i64| -> Vec<Vec<Vec<i64>>> {
            (0..3).map(|a| (0..3).map(|b| (0..3).map(|c| f(a, b, c)).collect()).collect()).collect()
        };
        Self {
            name: "so3-adjoint".into(),
            structure: cube(&|a, b, c| -levi_civita(a, b, c)),
            insertions: cube(&levi_civita),
            metric: (0..3).map(|a| (0..3).map(|b| i64::from(a == b)).collect()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.insertions.len()
    }

    pub fn rep_dim(&self) -> usize {
        self.insertions.first().map_or(0, Vec::len)
    }

    /// Antisymmetry, the Jacobi identity, and `[T_a, T_b] = f_abc T_c`.
    pub fn checks(&self) -> Vec<(String, bool)> {
        let d = self.dim();
        let f = &self.structure;
        let antisym = (0..d).all(|a| (0..d).all(|b| (0..d).all(|c| f[a][b][c] == -f[b][a][c])));
        let jacobi = (0..d).all(|a| {
            (0..d).all(|b| {
                (0..d).all(|c| {
                    (0..d).all(|e| {
                        (0..d)
                            .map(|x| f[b][c][x] * f[a][x][e] + f[c][a][x] * f[b][x][e] + f[a][b][x] * f[c][x][e])
                            .sum::<i64>()
                            == 0
                    })
                })
            })
        });
        let t = &self.insertions;
        let closure = (0..d).all(|a| {
            (0..d).all(|b| {
                let comm = mat_sub(&mat_mul(&t[a], &t[b]), &mat_mul(&t[b], &t[a]));
                let rhs = (0..d).fold(zero_mat(self.rep_dim()), |acc, c| mat_add(&acc, &mat_scale(&t[c], f[a][b][c])));
                comm == rhs
            })
        });
        vec![
            ("antisymmetry".into(), antisym),
            ("Jacobi identity".into(), jacobi),
            ("commutator closure".into(), closure),
        ]
    }
}

type Mat = Vec<Vec<i64>>;

fn zero_mat(n: usize) -> Mat {
    vec![vec![0; n]; n]
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn mat_add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

fn mat_sub(a: &Mat, b: &Mat) -> Mat {
    mat_add(a, &mat_scale(b, -1))
}

fn mat_scale(a: &Mat, k: i64) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x * k).collect()).collect()
}

/// `sum over index pairs per chord of g_ab ... tr(prod of T around the circle)`.
pub fn lie_weight(cd: &ChordDiagram, ws: &WeightSystem) -> BigInt {
    let n = cd.degree();
    let d = ws.dim();
    let pairs: Vec<(usize, usize, i64)> = (0..d)
        .flat_map(|a| (0..d).map(move |b| (a, b)))
        .filter_map(|(a, b)| (ws.metric[a][b] != 0).then_some((a, b, ws.metric[a][b])))
        .collect();
    let ends = cd.ends();
    let total = pairs.len().pow(n as u32);
    (0..total)
        .into_par_iter()
        .map(|mut code| {
            let mut index = vec![0usize; cd.word.len()];
            let mut g = BigInt::from(1);
            for e in &ends {
                let (a, b, m) = pairs[code % pairs.len()];
                code /= pairs.len();
                index[e[0]] = a;
                index[e[1]] = b;
                g *= m;
            }
            let prod = index.iter().fold(identity(ws.rep_dim()), |acc, &a| mat_mul(&acc, &ws.insertions[a]));
            g * (0..prod.len()).map(|i| prod[i][i]).sum::<i64>()
        })
        .reduce(BigInt::zero, |x, y| x + y)
}

/// The signed sum of weights in a relation.
pub fn relation_weight(rel: &FourTerm, ws: &WeightSystem) -> BigInt {
    rel.terms.iter().map(|(s, d)| lie_weight(d, ws) * s).sum()
}

/// Coefficients of `x^0..=x^n_max` in the Jones polynomial at `t = e^x`.
pub fn jones_vassiliev_coeffs(d: &Diagram, n_max: usize) -> Result<Vec<BigRational>> {
    normalized_jones(d)?.jones.series_coeffs("t", n_max)
}

/// Alternating sum over all `±` resolutions of the nodes of the `n`-th coefficient.
pub fn finite_type_defect(nd: &NodalDiagram, n: usize) -> Result<BigRational> {
    let nodes: Vec<usize> = nd.nodes.iter().copied().collect();
    if nodes.len() > MAX_NODES {
        return Err(Error::TooManyNodes { nodes: nodes.len(), limit: MAX_NODES });
    }
    let terms: Result<Vec<BigRational>> = (0..1u32 << nodes.len())
        .into_par_iter()
        .map(|mask| {
            let mut d = nd.diagram.clone();
            for (k, &c) in nodes.iter().enumerate() {
                let want = if mask >> k & 1 == 1 { -1 } else { 1 };
                if d.crossings()[c].sign() != want {
                    d = d.switch(c);
                }
            }
            let v = jones_vassiliev_coeffs(&d, n)?.swap_remove(n);
            Ok(if mask.count_ones() % 2 == 0 { v } else { -v })
        })
        .collect();
    Ok(terms?.into_iter().fold(BigRational::zero(), |a, b| a + b))
}
