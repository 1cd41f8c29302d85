//! Seeded random Reidemeister walks and invariance checks along them.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::alexander::alexander_poly;
use crate::arrow::arrow_polynomial;
use crate::bracket::{bracket_poly, normalized_jones};
use crate::diagram::moves::{MoveKind, MoveSpec};
use crate::diagram::Diagram;
use crate::khovanov::{build_complex, homology};
use crate::skein::{skein_eval, SkeinRule};
use crate::{Error, LaurentPoly, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Invariant {
    /// The raw bracket, checked after every move against the kink factor.
    Bracket,
    F,
    Jones,
    Conway,
    Alexander,
    Khovanov,
    Arrow,
}

impl Invariant {
    pub const CLASSICAL: [Invariant; 6] =
        [Invariant::Bracket, Invariant::F, Invariant::Jones, Invariant::Conway, Invariant::Alexander, Invariant::Khovanov];
    pub const VIRTUAL: [Invariant; 3] = [Invariant::Bracket, Invariant::F, Invariant::Arrow];
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Invariant::Bracket => "bracket",
            Invariant::F => "f",
            Invariant::Jones => "jones",
            Invariant::Conway => "conway",
            Invariant::Alexander => "alexander",
            Invariant::Khovanov => "khovanov",
            Invariant::Arrow => "arrow",
        };
        f.write_str(s)
    }
}

impl FromStr for Invariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "bracket" => Invariant::Bracket,
            "f" => Invariant::F,
            "jones" => Invariant::Jones,
            "conway" => Invariant::Conway,
            "alexander" => Invariant::Alexander,
            "khovanov" => Invariant::Khovanov,
            "arrow" => Invariant::Arrow,
            _ => return Err(Error::Parse(format!("unknown invariant {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub moves: usize,
    pub sequences: usize,
    /// Crossings allowed above the starting diagram.
    pub headroom: usize,
    pub virtual_moves: bool,
    /// Khovanov tables are compared only for starting diagrams this small.
    pub khovanov_max: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self { seed: 0, moves: 50, sequences: 20, headroom: 4, virtual_moves: false, khovanov_max: 7 }
    }
}

/// A random walk of `moves` moves. Moves that would exceed `max_crossings` are
/// not drawn; kinds without a site are skipped.
pub fn random_walk(d: &Diagram, kinds: &[MoveKind], moves: usize, max_crossings: usize, seed: u64) -> Result<Vec<(MoveKind, Diagram)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut out = Vec::with_capacity(moves);
    for _ in 0..moves {
        let n = cur.crossing_count() as i64;
        let options: Vec<(MoveKind, Vec<_>)> = kinds
            .iter()
            .filter(|k| n + k.delta() <= max_crossings as i64)
            .map(|&k| (k, cur.sites(k)))
            .filter(|(_, s)| !s.is_empty())
            .collect();
        let Some((kind, sites)) = options.choose(&mut rng) else { break };
        let site = *sites.choose(&mut rng).expect("nonempty");
        cur = cur.apply_move(&MoveSpec::at(*kind, site))?;
        out.push((*kind, cur.clone()));
    }
    Ok(out)
}

/// Text form of an invariant, or `None` where it does not apply.
pub fn invariant_text(inv: Invariant, d: &Diagram) -> Result<Option<String>> {
    let classical = d.is_classical();
    let v = match inv {
        Invariant::Bracket => bracket_poly(d)?.to_string(),
        Invariant::F => normalized_jones(d)?.f.to_string(),
        Invariant::Jones => normalized_jones(d)?.jones.to_string(),
        Invariant::Conway if classical => skein_eval(d, SkeinRule::Conway)?.to_string(),
        Invariant::Alexander if classical && d.is_connected() => alexander_poly(d)?.to_string(),
        Invariant::Khovanov if classical && d.classical_indices().len() <= crate::khovanov::DEFAULT_CAP => {
            format!("{:?}", homology(&build_complex(d)?))
        }
        Invariant::Arrow => arrow_polynomial(d)?.normalized.to_string(),
        _ => return Ok(None),
    };
    Ok(Some(v))
}

/// `(-A^3)^k`.
fn kink(k: i64) -> LaurentPoly {
    crate::bracket::writhe_factor(-k)
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceOutcome {
    pub fixture: String,
    pub sequence: usize,
    pub seed: u64,
    pub moves: Vec<MoveKind>,
    pub final_crossings: usize,
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzReport {
    pub outcomes: Vec<SequenceOutcome>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.mismatches.is_empty())
    }

    pub fn move_count(&self) -> usize {
        self.outcomes.iter().map(|o| o.moves.len()).sum()
    }

    pub fn summary(&self) -> String {
        let bad = self.outcomes.iter().filter(|o| !o.mismatches.is_empty()).count();
        let mut s = format!("{} sequences, {} moves, {} failing\n", self.outcomes.len(), self.move_count(), bad);
        for o in self.outcomes.iter().filter(|o| !o.mismatches.is_empty()) {
            for m in &o.mismatches {
                s.push_str(&format!("  {} #{} (seed {}): {m}\n", o.fixture, o.sequence, o.seed));
            }
        }
        s
    }
}

fn sequence_seed(base: u64, fixture: usize, seq: usize) -> u64 {
    base.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ ((fixture as u64) << 32 | seq as u64)
}

/// Runs `cfg.sequences` walks from every fixture and compares invariants at
/// the end of each walk with their starting values. The raw bracket is checked
/// after every move: unchanged except for a factor `-A^{±3}` per kink.
pub fn fuzz(fixtures: &[(String, Diagram)], invariants: &[Invariant], cfg: &FuzzConfig) -> Result<FuzzReport> {
    let mut kinds: Vec<MoveKind> = MoveKind::CLASSICAL.to_vec();
    if cfg.virtual_moves {
        kinds.extend(MoveKind::ALL.iter().filter(|k| k.is_virtual()));
    }
    let jobs: Vec<(usize, usize)> =
        (0..fixtures.len()).flat_map(|f| (0..cfg.sequences).map(move |s| (f, s))).collect();
    let outcomes: Result<Vec<SequenceOutcome>> = jobs
        .par_iter()
        .map(|&(fi, si)| {
            let (name, d) = &fixtures[fi];
            let seed = sequence_seed(cfg.seed, fi, si);
            let start_n = d.crossing_count();
            let walk = random_walk(d, &kinds, cfg.moves, start_n + cfg.headroom, seed)?;
            let mut mismatches = Vec::new();
            let last = walk.last().map_or(d, |(_, e)| e);
            for &inv in invariants {
                match inv {
                    Invariant::Bracket => {
                        let (mut prev, mut w) = (bracket_poly(d)?, d.writhe()?);
                        for (step, (k, e)) in walk.iter().enumerate() {
                            let now = bracket_poly(e)?;
                            let dw = e.writhe()? - w;
                            let kinked = matches!(k, MoveKind::R1Plus | MoveKind::R1Minus);
                            let expected = if kinked { &prev * &kink(dw) } else { prev.clone() };
                            if now != expected || (kinked && dw.abs() != 1) {
                                mismatches.push(format!("bracket after move {step} ({k:?}): {now} != {expected}"));
                                break;
                            }
                            (prev, w) = (now, e.writhe()?);
                        }
                    }
                    Invariant::Khovanov if start_n > cfg.khovanov_max => {}
                    _ => {
                        let (a, b) = (invariant_text(inv, d)?, invariant_text(inv, last)?);
                        if let (Some(a), Some(b)) = (a, b) {
                            if a != b {
                                mismatches.push(format!("{inv}: {a} became {b}"));
                            }
                        }
                    }
                }
            }
            Ok(SequenceOutcome {
                fixture: name.clone(),
                sequence: si,
                seed,
                moves: walk.iter().map(|(k, _)| *k).collect(),
                final_crossings: last.crossing_count(),
                mismatches,
            })
        })
        .collect();
    Ok(FuzzReport { outcomes: outcomes? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{classical_knots, virtual_knots};

    fn fixtures(v: Vec<crate::corpus::Fixture>, k: usize) -> Vec<(String, Diagram)> {
        v.into_iter().take(k).map(|f| (f.name.clone(), f.diagram())).collect()
    }

    #[test]
    fn walks_are_reproducible() {
        let d = Diagram::from_braid_word(2, &[1, 1, 1]).unwrap();
        let a = random_walk(&d, &MoveKind::CLASSICAL, 20, 7, 9).unwrap();
        let b = random_walk(&d, &MoveKind::CLASSICAL, 20, 7, 9).unwrap();
        assert_eq!(a.len(), 20);
        assert!(a.iter().all(|(_, e)| e.crossing_count() <= 7));
        let keys = |w: &[(MoveKind, Diagram)]| w.iter().map(|(k, e)| (*k, e.canonical_key())).collect::<Vec<_>>();
        assert_eq!(keys(&a), keys(&b));
    }

    #[test]
    fn classical_invariance() {
        let cfg = FuzzConfig { seed: 1, moves: 15, sequences: 3, ..FuzzConfig::default() };
        let r = fuzz(&fixtures(classical_knots(), 4), &Invariant::CLASSICAL, &cfg).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert!(r.move_count() > 100);
    }

    #[test]
    fn virtual_invariance() {
        let cfg = FuzzConfig { seed: 2, moves: 15, sequences: 3, virtual_moves: true, ..FuzzConfig::default() };
        let r = fuzz(&fixtures(virtual_knots(), 5), &Invariant::VIRTUAL, &cfg).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn walks_change_the_writhe() {
        // the writhe is not invariant, so some walk must change it
        let d = Diagram::from_braid_word(2, &[1, 1, 1]).unwrap();
        let cfg = FuzzConfig { seed: 3, moves: 10, sequences: 5, ..FuzzConfig::default() };
        let walks: Vec<i64> = (0..cfg.sequences)
            .map(|s| random_walk(&d, &MoveKind::CLASSICAL, 10, 7, sequence_seed(3, 0, s)).unwrap().last().unwrap().1.writhe().unwrap())
            .collect();
        assert!(walks.iter().any(|&w| w != 3));
    }
}
