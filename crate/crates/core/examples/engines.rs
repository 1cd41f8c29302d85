//! The bracket of a braid closure computed four ways: state sum, Temperley-Lieb
//! closure trace, tensor contraction, and the Jones skein recursion.
//!
//!     cargo run --example engines -- 3 "1 -2 1 -2"

use skeinlab::bracket::{bracket_poly, normalized_jones, to_jones_variable, writhe_factor};
use skeinlab::diagram::parse_braid;
use skeinlab::skein::{skein_eval, SkeinRule};
use skeinlab::tensor::{compile_morse, contract, default_rmatrix};
use skeinlab::tl::braid_to_tl;
use skeinlab::{Diagram, LaurentPoly};

fn main() {
    let mut args = std::env::args().skip(1);
    let strands: usize = args.next().map_or(3, |s| s.parse().expect("strand count"));
    let word = parse_braid(&args.next().unwrap_or_else(|| "1 -2 1 -2".into())).expect("braid word");
    let d = Diagram::from_braid_word(strands, &word).expect("braid closure");

    let state = bracket_poly(&d).expect("state sum");
    let tl = braid_to_tl(strands, &word).and_then(|x| x.closure_trace()).expect("closure trace");
    let total = contract(&compile_morse(strands, &word).expect("morse word"), &default_rmatrix()).expect("contraction");
    let tensor = total.div_exact(&LaurentPoly::loop_value(), "A").expect("divisible by d");
    println!("state sum      {state}");
    println!("TL trace       {tl}");
    println!("tensor / d     {tensor}");

    let w = d.writhe().expect("oriented");
    let from_tensor = to_jones_variable(&(&tensor * &writhe_factor(w)));
    let skein = skein_eval(&d, SkeinRule::Jones).expect("skein");
    println!("V from tensor  {from_tensor}");
    println!("V from skein   {skein}");
    let agree = state == tl && tl == tensor && from_tensor == skein && skein == normalized_jones(&d).unwrap().jones;
    println!("{}", if agree { "all engines agree" } else { "ENGINES DISAGREE" });
}
