//! Finite type invariants: Jones coefficients at t = e^x, chord diagrams of
//! nodal knots, the so(3) weight system and the four-term relation.

use skeinlab::corpus::classical_knots;
use skeinlab::vassiliev::{
    chord_from_nodal, finite_type_defect, four_term_relations, jones_vassiliev_coeffs, lie_weight, relation_weight,
    ChordDiagram, NodalDiagram, WeightSystem,
};

fn main() {
    for f in classical_knots().iter().take(4) {
        let v: Vec<String> = jones_vassiliev_coeffs(&f.diagram(), 3).expect("series").iter().map(|c| c.to_string()).collect();
        println!("{:<5} x^0..x^3 of V(e^x): [{}]", f.name, v.join(", "));
    }

    let trefoil = classical_knots()[0].diagram();
    let all = NodalDiagram::all(trefoil.clone());
    println!("\ntrefoil with every crossing a node: chord diagram {}", chord_from_nodal(&all).expect("one component"));
    for k in 0..=3 {
        let nd = NodalDiagram::new(trefoil.clone(), 0..k).expect("nodes");
        println!("  {k} nodes: order-2 defect {}", finite_type_defect(&nd, 2).expect("defect"));
    }

    let so3 = WeightSystem::so3_adjoint();
    println!();
    for (name, pass) in so3.checks() {
        println!("{} {name}: {pass}", so3.name);
    }
    for n in 1..=3 {
        let weights: Vec<String> =
            ChordDiagram::all(n).iter().map(|c| format!("{c}:{}", lie_weight(c, &so3))).collect();
        let rels = four_term_relations(n).expect("degree");
        let zero = rels.iter().filter(|r| relation_weight(r, &so3) == 0.into()).count();
        println!("degree {n}: {}  four-term relations vanishing {zero}/{}", weights.join(" "), rels.len());
    }
}
