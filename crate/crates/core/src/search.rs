//! Exhaustive search for virtual knots with unit Jones polynomial whose Arrow
//! polynomial is nontrivial.
//!
//! Every signed Gauss word with up to `max_classical` crossings is generated
//! once up to rotation and relabelling, realised with virtual crossings,
//! and tested.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::arrow::arrow_polynomial;
use crate::bracket::normalized_jones;
use crate::diagram::Diagram;
use crate::{Error, Result};

pub const MAX_CLASSICAL: usize = 5;

/// `(label, over, sign)`; labels numbered by first appearance from 1.
type Token = (u8, bool, bool);

fn relabel(word: &[Token]) -> Vec<Token> {
    let mut map = [0u8; 32];
    let mut next = 1;
    word.iter()
        .map(|&(l, o, s)| {
            if map[l as usize] == 0 {
                map[l as usize] = next;
                next += 1;
            }
            (map[l as usize], o, s)
        })
        .collect()
}

fn canonical(word: &[Token]) -> Vec<Token> {
    let n = word.len();
    // over before under, + before -
    let key = |w: &Vec<Token>| w.iter().map(|&(l, o, s)| (l, !o, !s)).collect::<Vec<_>>();
    (0..n).map(|r| relabel(&[&word[r..], &word[..r]].concat())).min_by_key(key).unwrap_or_default()
}

fn to_text(word: &[Token]) -> String {
    word.iter()
        .map(|&(l, o, s)| format!("{}{}{}", if o { 'O' } else { 'U' }, l, if s { '+' } else { '-' }))
        .collect()
}

/// Canonical signed Gauss words with exactly `n` classical crossings.
pub fn gauss_words(n: usize) -> Vec<String> {
    let mut matchings = Vec::new();
    let mut word = vec![0u8; 2 * n];
    fn fill(word: &mut [u8], label: u8, out: &mut Vec<Vec<u8>>) {
        let Some(first) = word.iter().position(|&w| w == 0) else {
            out.push(word.to_vec());
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
    fill(&mut word, 1, &mut matchings);
    let mut out = BTreeSet::new();
    for m in matchings {
        for over in 0..1u32 << n {
            for sign in 0..1u32 << n {
                let mut seen = [false; 32];
                let w: Vec<Token> = m
                    .iter()
                    .map(|&l| {
                        let k = l as usize - 1;
                        let first = !seen[k];
                        seen[k] = true;
                        (l, (over >> k & 1 == 1) == first, sign >> k & 1 == 0)
                    })
                    .collect();
                let c = canonical(&w);
                if c == w {
                    out.insert(to_text(&c));
                }
            }
        }
    }
    out.into_iter().collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchHit {
    pub gauss: String,
    pub virtual_crossings: usize,
    pub arrow: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub max_classical: usize,
    /// Words examined for each number of classical crossings.
    pub words: Vec<usize>,
    pub unit_jones: usize,
    pub hits: Vec<SearchHit>,
}

impl SearchReport {
    pub fn text(&self) -> String {
        let total: usize = self.words.iter().sum();
        let mut s = format!(
            "searched all {total} signed Gauss words with 1..={} classical crossings (by size: {:?})\n",
            self.max_classical, self.words
        );
        s.push_str(&format!("{} have normalized bracket 1; {} of these have Arrow polynomial != 1\n", self.unit_jones, self.hits.len()));
        for h in &self.hits {
            s.push_str(&format!("{}  virtual crossings {}  arrow {}\n", h.gauss, h.virtual_crossings, h.arrow));
        }
        s
    }
}

pub fn unit_jones_search(max_classical: usize) -> Result<SearchReport> {
    if max_classical > MAX_CLASSICAL {
        return Err(Error::TooManyCrossings { crossings: max_classical, cap: MAX_CLASSICAL });
    }
    let mut words = Vec::new();
    let mut unit_jones = 0;
    let mut hits = Vec::new();
    for n in 1..=max_classical {
        let codes = gauss_words(n);
        words.push(codes.len());
        let found: Vec<(bool, Option<SearchHit>)> = codes
            .par_iter()
            .map(|g| -> Result<(bool, Option<SearchHit>)> {
                let d = Diagram::from_gauss(g)?;
                if !normalized_jones(&d)?.f.is_one() {
                    return Ok((false, None));
                }
                let arrow = arrow_polynomial(&d)?.normalized;
                let hit = (!arrow.is_one()).then(|| SearchHit {
                    gauss: g.clone(),
                    virtual_crossings: d.crossing_count() - d.classical_indices().len(),
                    arrow: arrow.to_string(),
                });
                Ok((true, hit))
            })
            .collect::<Result<_>>()?;
        unit_jones += found.iter().filter(|(u, _)| *u).count();
        hits.extend(found.into_iter().filter_map(|(_, h)| h));
    }
    Ok(SearchReport { max_classical, words, unit_jones, hits })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_counts() {
        // one chord: O1+U1+ and O1-U1- up to rotation
        assert_eq!(gauss_words(1), vec!["O1+U1+", "O1-U1-"]);
        // two chords, crossed or parallel
        let two = gauss_words(2);
        assert!(two.contains(&"O1+O2+U1+U2+".to_string()));
        assert!(two.iter().all(|w| Diagram::from_gauss(w).is_ok()));
    }

    #[test]
    fn small_search() {
        let r = unit_jones_search(2).unwrap();
        assert_eq!(r.words.len(), 2);
        assert!(r.unit_jones > 0);
        assert!(r.hits.is_empty(), "{}", r.text());
        assert!(unit_jones_search(6).is_err());
    }
}
