use proptest::prelude::*;

use skeinlab::bracket::{bracket_poly, normalized_jones};
use skeinlab::diagram::moves::{MoveKind, MoveSpec};
use skeinlab::diagram::Format;
use skeinlab::tensor::{compile_morse, contract, default_rmatrix};
use skeinlab::tl::braid_to_tl;
use skeinlab::{Diagram, LaurentPoly};

fn braid_word() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (2usize..=4).prop_flat_map(|n| {
        let letter = (1..n as i64, any::<bool>()).prop_map(|(g, neg)| if neg { -g } else { g });
        (Just(n), prop::collection::vec(letter, 0..=8))
    })
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=3, -6i64..=6), 0..5)
        .prop_map(|terms| terms.into_iter().map(|(c, e)| LaurentPoly::mono(c, "A", e)).sum())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn three_bracket_engines_agree((n, w) in braid_word()) {
        let d = Diagram::from_braid_word(n, &w).unwrap();
        let state = bracket_poly(&d).unwrap();
        let tl = braid_to_tl(n, &w).unwrap().closure_trace().unwrap();
        let total = contract(&compile_morse(n, &w).unwrap(), &default_rmatrix()).unwrap();
        prop_assert_eq!(&state, &tl);
        prop_assert_eq!(Some(state), total.div_exact(&LaurentPoly::loop_value(), "A"));
    }

    #[test]
    fn mirror_inverts_a((n, w) in braid_word()) {
        let d = Diagram::from_braid_word(n, &w).unwrap();
        let m = d.mirror();
        prop_assert_eq!(bracket_poly(&m).unwrap(), bracket_poly(&d).unwrap().invert_var("A"));
    }

    #[test]
    fn pd_round_trip((n, w) in braid_word()) {
        let d = Diagram::from_braid_word(n, &w).unwrap();
        prop_assume!(d.is_connected() && d.free_loops() == 0 && d.crossing_count() > 0);
        let again = Diagram::decode(Format::Pd, &d.encode(Format::Pd)).unwrap();
        prop_assert!(again.is_isomorphic(&d));
    }

    #[test]
    fn moves_keep_f((n, w) in braid_word(), pick in any::<prop::sample::Index>(), kind in 0usize..MoveKind::CLASSICAL.len()) {
        let d = Diagram::from_braid_word(n, &w).unwrap();
        let kind = MoveKind::CLASSICAL[kind];
        let sites = d.sites(kind);
        prop_assume!(!sites.is_empty());
        let e = d.apply_move(&MoveSpec::at(kind, sites[pick.index(sites.len())])).unwrap();
        prop_assert_eq!(normalized_jones(&e).unwrap().f, normalized_jones(&d).unwrap().f);
    }

    #[test]
    fn polynomial_text_round_trip(a in poly()) {
        prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
    }

    #[test]
    fn polynomial_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        let prod = &a * &LaurentPoly::loop_value();
        prop_assert_eq!(prod.div_exact(&LaurentPoly::loop_value(), "A"), Some(a));
    }
}
