//! Random Reidemeister walks from the fixture knots, checking invariants at the end of each walk.
//!
//!     cargo run --release --example fuzz -- 10 30 f,jones,alexander

use std::time::Instant;

use skeinlab::corpus::classical_knots;
use skeinlab::fuzz::{fuzz, FuzzConfig, Invariant};

fn main() {
    let mut args = std::env::args().skip(1);
    let sequences = args.next().map_or(5, |s| s.parse().expect("sequence count"));
    let moves = args.next().map_or(30, |s| s.parse().expect("move count"));
    let invariants: Vec<Invariant> = match args.next() {
        Some(list) => list.split(',').map(|s| s.parse().expect("invariant name")).collect(),
        None => Invariant::CLASSICAL.to_vec(),
    };
    let fixtures: Vec<_> = classical_knots().into_iter().map(|f| (f.name.clone(), f.diagram())).collect();
    let cfg = FuzzConfig { sequences, moves, ..FuzzConfig::default() };
    let start = Instant::now();
    let report = fuzz(&fixtures, &invariants, &cfg).expect("fuzz run");
    print!("{}", report.summary());
    println!("{:.2?}", start.elapsed());
}
