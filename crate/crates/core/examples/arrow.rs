//! Arrow polynomial of virtual knots given as signed Gauss codes. The bracket
//! alone cannot see the difference between some of these and the unknot.
//!
//!     cargo run --example arrow -- "O1+U2-O3-U1+O2-U3-"

use skeinlab::arrow::{arrow_polynomial, collapse_k};
use skeinlab::bracket::normalized_jones;
use skeinlab::corpus::virtual_knots;
use skeinlab::Diagram;

fn show(name: &str, d: &Diagram) {
    let a = arrow_polynomial(d).expect("arrow polynomial");
    let f = normalized_jones(d).expect("bracket").f;
    println!("{name}");
    println!("  classical {}  virtual {}", d.classical_count(), d.virtual_count());
    println!("  f      {f}");
    println!("  arrow  {}", a.normalized);
    println!("  K -> 1 {}", collapse_k(&a.normalized));
}

fn main() {
    match std::env::args().nth(1) {
        Some(code) => show(&code, &Diagram::from_gauss(&code).expect("gauss code")),
        None => {
            for f in virtual_knots() {
                show(&format!("{} {}", f.name, f.code), &f.diagram());
            }
        }
    }
}
