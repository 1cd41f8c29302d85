//! The bracket as a partition function of a Morse diagram, and the matrix
//! identities behind it. A deliberately broken R-matrix shows what the checks catch.

use skeinlab::tensor::{compile_morse, contract, default_rmatrix, identity, verify_tensor_axioms, Gauss, RMatrixSet};
use skeinlab::LaurentPoly;

fn report(title: &str, rm: &RMatrixSet) {
    println!("{title}");
    for c in verify_tensor_axioms(rm) {
        let first = c.residual.first().map(String::as_str).unwrap_or("");
        println!("  {:<34} {}  {first}", c.name, if c.pass { "ok" } else { "FAIL" });
    }
}

fn main() {
    let rm = default_rmatrix();
    report("default R-matrix", &rm);

    let mw = compile_morse(2, &[1, 1, 1]).expect("braid word");
    println!("\ntrefoil as {} Morse events", mw.events.len());
    let z = contract(&mw, &rm).expect("contraction");
    println!("contraction  {z}");
    println!("divided by d {}", z.div_exact(&LaurentPoly::loop_value(), "A").expect("divisible"));

    let mut bent = rm.m.clone();
    bent[1][0] = Gauss::imag(LaurentPoly::mono(1, "A", -1));
    report("\ncap/cup matrix perturbed", &RMatrixSet::from_m(bent));

    let mut flat = default_rmatrix();
    flat.r_plus = identity(4);
    flat.r_minus = identity(4);
    report("\ncrossings replaced by the identity", &flat);
}
