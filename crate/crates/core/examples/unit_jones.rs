//! Searches small virtual knots for unit Jones polynomial with a nontrivial
//! Arrow polynomial.
//!
//!     cargo run --release --example unit_jones -- 4

use skeinlab::search::unit_jones_search;

fn main() {
    let m: usize = std::env::args().nth(1).map_or(4, |s| s.parse().expect("crossing count"));
    let report = unit_jones_search(m).expect("search");
    print!("{}", report.text());
}
