//! Khovanov homology tables for a few knots, or for a braid word given on the command line.
//!
//!     cargo run --release --example khovanov -- "1 1 1"

use std::time::Instant;

use skeinlab::corpus::classical_knots;
use skeinlab::diagram::{parse_braid, Diagram};
use skeinlab::khovanov::{build_complex, euler_in_a, graded_euler, homology, homology_grid};

fn main() {
    let arg = std::env::args().nth(1);
    let inputs: Vec<(String, Diagram)> = match arg {
        Some(word) => {
            let w = parse_braid(&word).expect("braid word");
            let n = w.iter().map(|g| g.unsigned_abs() as usize + 1).max().unwrap_or(1);
            vec![(word.clone(), Diagram::from_braid_word(n, &w).expect("braid word"))]
        }
        None => classical_knots().into_iter().take(4).map(|f| (f.name.clone(), f.diagram())).collect(),
    };
    for (name, d) in inputs {
        let start = Instant::now();
        let c = build_complex(&d).expect("classical oriented diagram");
        let h = homology(&c);
        println!("{name}: {} generators, {:.2?}", c.generators.values().map(Vec::len).sum::<usize>(), start.elapsed());
        print!("{}", homology_grid(&h));
        println!("chi = {}", graded_euler(&c));
        println!("chi(q = -A^-2) = {}\n", euler_in_a(&graded_euler(&c)));
    }
}
