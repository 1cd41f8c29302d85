//! Kauffman bracket, normalized bracket f and Jones polynomial of a braid closure.
//!
//!     cargo run --example bracket -- 2 "1 1 1"

use skeinlab::bracket::{normalized_jones, state_histogram};
use skeinlab::diagram::parse_braid;
use skeinlab::Diagram;

fn main() {
    let mut args = std::env::args().skip(1);
    let strands: usize = args.next().map_or(2, |s| s.parse().expect("strand count"));
    let word = parse_braid(&args.next().unwrap_or_else(|| "1 1 1".into())).expect("braid word");
    let d = Diagram::from_braid_word(strands, &word).expect("braid closure");

    let v = normalized_jones(&d).expect("bracket");
    println!("crossings  {}", d.crossing_count());
    println!("writhe     {}", d.writhe().expect("oriented"));
    println!("<K>        {}", v.bracket);
    println!("f          {}", v.f);
    println!("V(t)       {}", v.jones);

    println!("\nstates by #A - #B and loop count:");
    for ((ab, loops), n) in state_histogram(&d, 20).expect("state count") {
        println!("  A-B={ab:<3} loops={loops:<2} {n}");
    }
}
