//! Text codecs: PD codes, signed Gauss codes, braid words and JSON.
//!
//! PD: `X(a,b,c,d)` terms with the ends counterclockwise and `a` the incoming
//! under-edge; `V(a,b,c,d)` for virtual crossings; `Loop(k)` for a crossingless
//! component. Gauss: `O<k><s>` / `U<k><s>` with `s` in `+`/`-`, `V<k>` for an
//! explicit virtual crossing, components separated by `|`. Braid: signed
//! generator indices, `1 -2 1 -2`.

use std::collections::{BTreeMap, HashMap};

use super::embed::{embed, Pass};
use super::{Arm, Crossing, CrossingKind, Diagram};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Pd,
    Gauss,
    Braid,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pd" => Ok(Format::Pd),
            "gauss" => Ok(Format::Gauss),
            "braid" => Ok(Format::Braid),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

impl Diagram {
    pub fn decode(format: Format, text: &str) -> Result<Diagram> {
        match format {
            Format::Pd => Self::from_pd(text),
            Format::Gauss => Self::from_gauss(text),
            Format::Braid => {
                let word = parse_braid(text)?;
                let strands = word.iter().map(|g| g.unsigned_abs() as usize + 1).max().unwrap_or(1);
                Self::from_braid_word(strands, &word)
            }
            Format::Json => Self::from_json(text),
        }
    }

    /// Encodes the diagram; braid words cannot be recovered from a diagram.
    pub fn encode(&self, format: Format) -> String {
        match format {
            Format::Pd | Format::Braid => self.to_pd(),
            Format::Gauss => self.to_gauss(),
            Format::Json => serde_json::to_string(self).expect("diagram serializes"),
        }
    }

    pub fn from_json(text: &str) -> Result<Diagram> {
        let d: Diagram = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    /// Trace closure of a braid word; letter `k > 0` is a positive crossing between strands `k` and `k+1`.
    pub fn from_braid_word(strands: usize, word: &[i64]) -> Result<Diagram> {
        let strands = strands.max(1);
        let mut crossings: Vec<Crossing> = Vec::new();
        let mut first_top: Vec<Option<Arm>> = vec![None; strands];
        let mut bottom: Vec<Option<Arm>> = vec![None; strands];
        let placeholder = Arm::new(0, 0);
        let mut pending: Vec<(Arm, Arm)> = Vec::new();
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if g == 0 || i >= strands {
                return Err(Error::BadIndex { index: g, strands });
            }
            let (p, q) = (i - 1, i);
            let c = crossings.len();
            // slots of (top p, top q, bottom p, bottom q)
            let (tp, tq, bp, bq, second_in) = if g > 0 { (0, 3, 1, 2, 3) } else { (1, 0, 2, 3, 1) };
            crossings.push(Crossing { kind: CrossingKind::Classical, second_in, links: [placeholder; 4] });
            for (pos, top) in [(p, tp), (q, tq)] {
                let top = Arm::new(c, top);
                match bottom[pos] {
                    Some(b) => pending.push((b, top)),
                    None => first_top[pos] = Some(top),
                }
            }
            bottom[p] = Some(Arm::new(c, bp));
            bottom[q] = Some(Arm::new(c, bq));
        }
        let mut free_loops = 0;
        for pos in 0..strands {
            match (bottom[pos], first_top[pos]) {
                (Some(b), Some(t)) => pending.push((b, t)),
                _ => free_loops += 1,
            }
        }
        for (a, b) in pending {
            crossings[a.crossing].links[a.slot as usize] = b;
            crossings[b.crossing].links[b.slot as usize] = a;
        }
        Diagram::new(crossings, free_loops)
    }

    pub fn from_pd(text: &str) -> Result<Diagram> {
        let terms = parse_pd_terms(text)?;
        let mut ends: BTreeMap<i64, Vec<Arm>> = BTreeMap::new();
        let mut free_loops = 0;
        let mut kinds = Vec::new();
        for (name, labels) in &terms {
            match name.as_str() {
                "X" | "V" => {
                    if labels.len() != 4 {
                        return Err(Error::Parse(format!("{name} needs 4 labels")));
                    }
                    let c = kinds.len();
                    kinds.push(if name == "X" { CrossingKind::Classical } else { CrossingKind::Virtual });
                    for (s, &l) in labels.iter().enumerate() {
                        ends.entry(l).or_default().push(Arm::new(c, s as u8));
                    }
                }
                "Loop" | "O" => {
                    if labels.len() != 1 {
                        return Err(Error::Parse("Loop takes one label".into()));
                    }
                    free_loops += 1;
                    if ends.insert(labels[0], Vec::new()).is_some() {
                        return Err(Error::InconsistentCode(format!("label {} reused by a loop", labels[0])));
                    }
                }
                _ => return Err(Error::Parse(format!("unknown term {name}"))),
            }
        }
        let n = kinds.len();
        let mut links = vec![[Arm::new(0, 0); 4]; n];
        let mut label_of = vec![[0i64; 4]; n];
        for (&l, arms) in &ends {
            if arms.is_empty() {
                continue;
            }
            if arms.len() != 2 {
                return Err(Error::InconsistentCode(format!("edge label {l} used {} times", arms.len())));
            }
            let (a, b) = (arms[0], arms[1]);
            links[a.crossing][a.slot as usize] = b;
            links[b.crossing][b.slot as usize] = a;
            label_of[a.crossing][a.slot as usize] = l;
            label_of[b.crossing][b.slot as usize] = l;
        }
        // orient strands: X fixes its understrand as a -> c
        let mut dir: Vec<[Option<bool>; 4]> = vec![[None; 4]; n];
        let mut stack: Vec<(Arm, bool)> = Vec::new();
        for c in 0..n {
            if kinds[c] == CrossingKind::Classical {
                stack.push((Arm::new(c, 0), true));
            }
        }
        let propagate = |stack: &mut Vec<(Arm, bool)>, dir: &mut Vec<[Option<bool>; 4]>| -> Result<()> {
            while let Some((a, incoming)) = stack.pop() {
                match dir[a.crossing][a.slot as usize] {
                    Some(x) if x == incoming => continue,
                    Some(_) => {
                        return Err(Error::InconsistentCode(format!(
                            "edge {} cannot be oriented consistently",
                            label_of[a.crossing][a.slot as usize]
                        )))
                    }
                    None => dir[a.crossing][a.slot as usize] = Some(incoming),
                }
                stack.push((links[a.crossing][a.slot as usize], !incoming));
                stack.push((a.opposite(), !incoming));
            }
            Ok(())
        };
        propagate(&mut stack, &mut dir)?;
        // strands with no undercrossing: follow increasing labels
        loop {
            let unset = (0..n)
                .flat_map(|c| (0..4u8).map(move |s| Arm::new(c, s)))
                .filter(|a| dir[a.crossing][a.slot as usize].is_none())
                .min_by_key(|a| (label_of[a.crossing][a.slot as usize], *a));
            let Some(a) = unset else { break };
            let b = links[a.crossing][a.slot as usize];
            let next = |x: Arm| label_of[x.crossing][x.opposite().slot as usize];
            let l = label_of[a.crossing][a.slot as usize];
            // the edge flows into the end from which the walk continues to label l+1
            let into_a = next(a) == l + 1 || (next(b) != l + 1 && next(a) >= next(b));
            stack.push((a, into_a));
            propagate(&mut stack, &mut dir)?;
        }
        let mut crossings = Vec::with_capacity(n);
        for c in 0..n {
            let d = dir[c].map(|x| x.unwrap());
            let second_in = if d[1] { 1 } else { 3 };
            crossings.push(Crossing { kind: kinds[c], second_in, links: links[c] });
        }
        let mut diagram = Diagram { crossings, free_loops, oriented: true };
        for c in 0..n {
            if diagram.crossings[c].is_virtual() && !dir[c][0].unwrap() {
                diagram.rotate_slots(c, 2);
                let x = &mut diagram.crossings[c];
                x.second_in = if dir[c][3].unwrap() { 1 } else { 3 };
            }
        }
        diagram.validate()?;
        if !diagram.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(diagram)
    }

    /// PD text with edges numbered consecutively along each component.
    pub fn to_pd(&self) -> String {
        let mut comps = self.component_edges();
        let tails = self.edge_tails();
        // A two-edge component is consecutive both ways round; the decoder
        // then lets the lower label flow into the lower-numbered crossing.
        for comp in comps.iter_mut().filter(|c| c.len() == 2) {
            let tail = tails[comp[0]];
            if self.link(tail).crossing >= tail.crossing {
                comp.rotate_left(1);
            }
        }
        let mut label = vec![0usize; self.crossings.len() * 2];
        let mut next = 1;
        for comp in &comps {
            for &e in comp {
                label[e] = next;
                next += 1;
            }
        }
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .enumerate()
            .map(|(c, x)| {
                let ls: Vec<String> =
                    (0..4u8).map(|s| label[self.edge_of(Arm::new(c, s))].to_string()).collect();
                format!("{}({})", if x.is_virtual() { "V" } else { "X" }, ls.join(","))
            })
            .collect();
        for _ in 0..self.free_loops {
            parts.push(format!("Loop({next})"));
            next += 1;
        }
        parts.join(" ")
    }

    pub fn from_gauss(text: &str) -> Result<Diagram> {
        #[derive(Clone, Copy, PartialEq)]
        enum Kind {
            O,
            U,
            V,
        }
        let mut comps: Vec<Vec<(Kind, u64, i8)>> = Vec::new();
        for comp in text.split('|') {
            let chars: Vec<char> = comp.chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
            let mut tokens = Vec::new();
            let mut i = 0;
            while i < chars.len() {
                let kind = match chars[i] {
                    'O' | 'o' => Kind::O,
                    'U' | 'u' => Kind::U,
                    'V' | 'v' => Kind::V,
                    ch => return Err(Error::Parse(format!("unexpected {ch:?} in Gauss code"))),
                };
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let label: u64 = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::Parse("missing crossing label".into()))?;
                let sign = match chars.get(i) {
                    Some('+') => {
                        i += 1;
                        1
                    }
                    Some('-') | Some('\u{2212}') => {
                        i += 1;
                        -1
                    }
                    _ if kind == Kind::V => 0,
                    _ => return Err(Error::Parse(format!("crossing {label} needs a sign"))),
                };
                tokens.push((kind, label, sign));
            }
            comps.push(tokens);
        }
        if comps.len() == 1 && comps[0].is_empty() {
            return Ok(Diagram::unknot());
        }
        // per label: (kind, sign, seen passes)
        let mut info: BTreeMap<u64, (bool, i8, Vec<Kind>)> = BTreeMap::new();
        for &(k, l, s) in comps.iter().flatten() {
            let e = info.entry(l).or_insert((k == Kind::V, s, Vec::new()));
            if e.0 != (k == Kind::V) {
                return Err(Error::InconsistentCode(format!("crossing {l} is both virtual and classical")));
            }
            if k != Kind::V && e.1 != s {
                return Err(Error::InconsistentCode(format!("crossing {l} has conflicting signs")));
            }
            e.2.push(k);
        }
        let mut index: HashMap<u64, usize> = HashMap::new();
        let mut kinds = Vec::new();
        for (&l, (virt, sign, passes)) in &info {
            let ok = if *virt {
                passes.len() == 2
            } else {
                passes.len() == 2 && passes.contains(&Kind::O) && passes.contains(&Kind::U)
            };
            if !ok {
                return Err(Error::InconsistentCode(format!("crossing {l} must appear once over and once under")));
            }
            index.insert(l, kinds.len());
            let kind = if *virt { CrossingKind::Virtual } else { CrossingKind::Classical };
            kinds.push((kind, if *virt || *sign > 0 { 3 } else { 1 }));
        }
        let mut virtual_seen: HashMap<u64, bool> = HashMap::new();
        let components: Vec<Vec<Pass>> = comps
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|&(k, l, s)| {
                        let crossing = index[&l];
                        let (in_slot, out_slot) = match k {
                            Kind::U => (0, 2),
                            Kind::O if s > 0 => (3, 1),
                            Kind::O => (1, 3),
                            Kind::V => {
                                if virtual_seen.insert(l, true).is_none() {
                                    (0, 2)
                                } else {
                                    (3, 1)
                                }
                            }
                        };
                        Pass { crossing, in_slot, out_slot }
                    })
                    .collect()
            })
            .collect();
        embed(kinds, &components)
    }

    /// Signed Gauss code; virtual crossings are omitted, as they carry no information.
    pub fn to_gauss(&self) -> String {
        let mut label: HashMap<usize, usize> = HashMap::new();
        let tails = self.edge_tails();
        let mut parts: Vec<String> = Vec::new();
        for comp in self.component_edges() {
            let mut s = String::new();
            for &e in &comp {
                let head = self.link(tails[e]);
                let x = &self.crossings[head.crossing];
                if x.is_virtual() {
                    continue;
                }
                let next = label.len() + 1;
                let l = *label.entry(head.crossing).or_insert(next);
                let ou = if x.is_over(head.slot) { 'O' } else { 'U' };
                let sign = if x.sign() > 0 { '+' } else { '-' };
                s.push_str(&format!("{ou}{l}{sign}"));
            }
            parts.push(s);
        }
        parts.extend(std::iter::repeat_n(String::new(), self.free_loops));
        parts.join(" | ").trim().to_string()
    }
}

pub fn parse_braid(text: &str) -> Result<Vec<i64>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.replace('\u{2212}', "-").parse::<i64>().map_err(|_| Error::Parse(format!("bad braid letter {t:?}"))))
        .collect()
}

fn parse_pd_terms(text: &str) -> Result<Vec<(String, Vec<i64>)>> {
    let mut s = text.trim();
    if let Some(rest) = s.strip_prefix("PD[").or_else(|| s.strip_prefix("PD(")) {
        s = &rest[..rest.len().saturating_sub(1)];
    }
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == ',' {
            i += 1;
            continue;
        }
        if !c.is_ascii_alphabetic() {
            return Err(Error::Parse(format!("unexpected {c:?} in PD code")));
        }
        let start = i;
        while i < chars.len() && chars[i].is_ascii_alphabetic() {
            i += 1;
        }
        let name: String = chars[start..i].iter().collect();
        if i >= chars.len() || (chars[i] != '(' && chars[i] != '[') {
            return Err(Error::Parse(format!("expected '(' after {name}")));
        }
        let close = if chars[i] == '(' { ')' } else { ']' };
        let body_start = i + 1;
        let Some(len) = chars[body_start..].iter().position(|&ch| ch == close) else {
            return Err(Error::Parse(format!("unterminated {name} term")));
        };
        let body: String = chars[body_start..body_start + len].iter().collect();
        let labels = body
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad label {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        out.push((name, labels));
        i = body_start + len + 1;
    }
    Ok(out)
}
