//! Alexander polynomial from the region determinant and from marker states,
//! with the Conway and Homflypt skein polynomials for comparison.
//!
//!     cargo run --example alexander -- 3 "1 -2 1 -2"

use skeinlab::alexander::{alexander_determinant, alexander_poly, equal_up_to_unit, trail_state_sum};
use skeinlab::diagram::parse_braid;
use skeinlab::skein::{skein_eval, SkeinRule};
use skeinlab::{Diagram, LaurentPoly};

fn main() {
    let mut args = std::env::args().skip(1);
    let strands: usize = args.next().map_or(3, |s| s.parse().expect("strand count"));
    let word = parse_braid(&args.next().unwrap_or_else(|| "1 -2 1 -2".into())).expect("braid word");
    let d = Diagram::from_braid_word(strands, &word).expect("braid closure");

    let det = alexander_determinant(&d).expect("determinant");
    let (sum, states) = trail_state_sum(&d).expect("marker states");
    println!("minor determinant  {det}");
    println!("marker state sum   {sum}  ({} states)", states.len());
    println!("normalized         {}", alexander_poly(&d).expect("alexander"));

    let conway = skein_eval(&d, SkeinRule::Conway).expect("conway");
    let z = LaurentPoly::mono_q(1, "t", 2) - LaurentPoly::mono_q(1, "t", -2);
    let from_conway = conway.substitute("z", &z).expect("polynomial in z");
    println!("Conway             {conway}");
    println!("at z = t^1/2 - t^-1/2, equal up to a unit: {}", equal_up_to_unit(&from_conway, &det));
    println!("Homflypt           {}", skein_eval(&d, SkeinRule::Homflypt).expect("homflypt"));
}
