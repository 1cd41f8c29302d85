//! Temperley-Lieb diagrams: basis counts, the defining relations, the image of
//! a braid, and an idempotent from a meander.

use skeinlab::tl::{braid_to_tl, meander_projector, verify_relations, Matching};
use skeinlab::LaurentPoly;

fn main() {
    let counts: Vec<usize> = (1..=6).map(|n| Matching::all(n, n).len()).collect();
    println!("planar matchings of 2n points, n = 1..6: {counts:?}");

    let rel = verify_relations(5);
    let ok = rel.iter().filter(|(_, p)| *p).count();
    println!("relations in TL_5: {ok}/{} hold", rel.len());
    for (name, pass) in rel.iter().take(4) {
        println!("  {name}: {pass}");
    }

    let x = braid_to_tl(3, &[1, -2]).expect("braid word");
    println!("\nrho(s1 s2^-1) = {x}");
    println!("closure trace  = {}", x.closure_trace().expect("square element"));

    let cap = Matching::from_pairs(2, 0, &[(0, 1)]).expect("cap");
    let cup = Matching::from_pairs(0, 2, &[(0, 1)]).expect("cup");
    let (q, k) = meander_projector(&cap, &cup).expect("meander");
    let d = LaurentPoly::loop_value();
    let qq = q.mul(&q).expect("same signature");
    println!("\nmeander q = {q}, k = {k}, q q = d^k q: {}", qq == q.scale(&d.pow(k as i64)));
}
