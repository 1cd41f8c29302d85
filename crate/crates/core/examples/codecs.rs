//! Reading and writing diagram codes: PD, signed Gauss, braid words and JSON.

use skeinlab::diagram::Format;
use skeinlab::Diagram;

fn main() {
    let d = Diagram::decode(Format::Pd, "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").expect("PD code");
    println!("PD     {}", d.encode(Format::Pd));
    println!("Gauss  {}", d.encode(Format::Gauss));
    println!("JSON   {}", d.encode(Format::Json));
    println!("writhe {}  components {}", d.writhe().expect("oriented"), d.component_count());

    let again = Diagram::from_gauss(&d.to_gauss()).expect("gauss code");
    println!("Gauss round trip isomorphic: {}", again.is_isomorphic(&d));

    let braid = Diagram::decode(Format::Braid, "1 -2 1 -2").expect("braid word");
    println!("\nbraid 1 -2 1 -2 as PD: {}", braid.encode(Format::Pd));

    let v = Diagram::from_gauss("O1+O2+U1+U2+").expect("virtual code");
    println!("\nO1+O2+U1+U2+ embeds with {} virtual crossing(s): {}", v.virtual_count(), v.encode(Format::Pd));

    for bad in ["X(1,2,3)", "X(1,1,2,2) X(3,4,5,6)"] {
        println!("{bad:<24} -> {}", Diagram::decode(Format::Pd, bad).unwrap_err());
    }
    println!("{:<24} -> {}", "O1+U2+", Diagram::from_gauss("O1+U2+").unwrap_err());
}
