//! Named test diagrams: small knots and links as braid closures, a few
//! virtual knots as Gauss codes, and seeded random braids.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{Diagram, Format};

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub format: Format,
    pub code: String,
    /// `(strands, word)` when the fixture is a braid closure.
    pub braid: Option<(usize, Vec<i64>)>,
}

impl Fixture {
    pub fn braid(name: &str, strands: usize, word: &[i64]) -> Self {
        let code = word.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        Self { name: name.into(), format: Format::Braid, code, braid: Some((strands, word.to_vec())) }
    }

    pub fn gauss(name: &str, code: &str) -> Self {
        Self { name: name.into(), format: Format::Gauss, code: code.into(), braid: None }
    }

    pub fn diagram(&self) -> Diagram {
        match &self.braid {
            Some((n, w)) => Diagram::from_braid_word(*n, w),
            None => Diagram::decode(self.format, &self.code),
        }
        .unwrap_or_else(|e| panic!("fixture {} does not parse: {e}", self.name))
    }

    pub fn crossings(&self) -> usize {
        match &self.braid {
            Some((_, w)) => w.len(),
            None => self.diagram().classical_indices().len(),
        }
    }
}

fn torus(name: &str, strands: usize, reps: usize) -> Fixture {
    let gens: Vec<i64> = (1..strands as i64).collect();
    let word: Vec<i64> = gens.iter().copied().cycle().take(gens.len() * reps).collect();
    Fixture::braid(name, strands, &word)
}

/// Ten knots from 3 to 10 crossings.
pub fn classical_knots() -> Vec<Fixture> {
    vec![
        Fixture::braid("3_1", 2, &[1, 1, 1]),
        Fixture::braid("4_1", 3, &[1, -2, 1, -2]),
        Fixture::braid("5_1", 2, &[1; 5]),
        Fixture::braid("5_2", 3, &[1, 1, 1, 2, -1, 2]),
        Fixture::braid("6_1", 4, &[1, 1, 2, -1, -3, 2, -3]),
        Fixture::braid("6_2", 3, &[1, 1, 1, -2, 1, -2]),
        Fixture::braid("6_3", 3, &[1, 1, -2, 1, -2, -2]),
        Fixture::braid("7_1", 2, &[1; 7]),
        Fixture::braid("8_19", 3, &[1, 1, 1, 2, 1, 1, 1, 2]),
        torus("T(3,5)", 3, 5),
    ]
}

pub fn links() -> Vec<Fixture> {
    vec![
        Fixture::braid("unknot", 1, &[]),
        Fixture::braid("unlink2", 2, &[]),
        Fixture::braid("Hopf", 2, &[1, 1]),
        Fixture::braid("T(2,4)", 2, &[1, 1, 1, 1]),
        Fixture::braid("Borromean", 3, &[1, -2, 1, -2, 1, -2]),
        Fixture::braid("3_1#3_1", 3, &[1, 1, 1, 2, 2, 2]),
    ]
}

/// Five knots that need virtual crossings.
pub fn virtual_knots() -> Vec<Fixture> {
    vec![
        Fixture::gauss("virtual trefoil", "O1+O2+U1+U2+"),
        Fixture::gauss("virtual trefoil mirror", "O1-O2-U1-U2-"),
        Fixture::gauss("2.1 mixed", "O1-O2+U1-U2+"),
        Fixture::gauss("3 classical A", "O1+O2+U1+O3+U2+U3+"),
        Fixture::gauss("3 classical B", "O1-O2-U3-U1-O3-U2-"),
    ]
}

/// Random braid closures with `3..=4` strands and at most `max_crossings` letters.
pub fn random_braids(seed: u64, count: usize, max_crossings: usize) -> Vec<Fixture> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let strands = rng.gen_range(3..=4usize);
            let len = rng.gen_range(4..=max_crossings.max(4));
            let word: Vec<i64> = (0..len)
                .map(|_| {
                    let g = rng.gen_range(1..strands as i64);
                    if rng.gen_bool(0.5) { g } else { -g }
                })
                .collect();
            Fixture::braid(&format!("random{k}"), strands, &word)
        })
        .collect()
}

/// Braid closures up to 12 crossings: knots, links, and random braids (25 in all).
pub fn corpus() -> Vec<Fixture> {
    let mut out = classical_knots();
    out.extend(links());
    out.extend(random_braids(2024, 25 - out.len(), 12));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let c = corpus();
        assert_eq!(c.len(), 25);
        assert!(c.iter().all(|f| f.crossings() <= 12));
        for f in classical_knots() {
            assert_eq!(f.diagram().component_count(), 1, "{}", f.name);
        }
        let comps: Vec<usize> = links().iter().map(|f| f.diagram().component_count()).collect();
        assert_eq!(comps, vec![1, 2, 2, 2, 3, 1]);
        for f in virtual_knots() {
            let d = f.diagram();
            assert!(!d.is_classical(), "{}", f.name);
            assert_eq!(d.component_count(), 1);
        }
    }

    #[test]
    fn random_braids_are_reproducible() {
        let a: Vec<String> = random_braids(7, 5, 10).into_iter().map(|f| f.code).collect();
        let b: Vec<String> = random_braids(7, 5, 10).into_iter().map(|f| f.code).collect();
        assert_eq!(a, b);
    }
}
