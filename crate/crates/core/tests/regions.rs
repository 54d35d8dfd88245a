use gpatlas::panchishkin::{
    constituent_valuation, contributing_set, derive_parabolic, panchishkin_quotient, ConstituentLabel, HodgeProfile,
    PanchishkinError,
};
use gpatlas::weights_regions::{adjacency, lattice, region_representative, Region, Weights, EDGES};
use proptest::prelude::*;

fn weights() -> impl Strategy<Value = Weights> {
    (2i64..=20, 0i64..=18, 1i64..=60, 1i64..=60).prop_filter_map("parity", |(k2, dk, c1, c2)| {
        Weights::new(k2 + dk, k2, c1, c2).ok()
    })
}

proptest! {
    #[test]
    fn signature_always_names_a_region(w in weights()) {
        prop_assert_eq!(w.signature().region(), Some(w.classify()));
    }

    #[test]
    fn mirror_commutes_with_classify(w in weights()) {
        prop_assert_eq!(w.mirror().classify(), w.classify().mirror());
        prop_assert_eq!(contributing_set(&w.mirror()), contributing_set(&w).swap_gl2());
    }

    #[test]
    fn contributing_set_is_a_half(w in weights()) {
        let s = contributing_set(&w);
        prop_assert!(s.is_panchishkin());
        for l in ConstituentLabel::all() {
            // partner valuations sum to k1 + k2 + c1 + c2 - 5
            let sum = constituent_valuation(l, &w) + constituent_valuation(l.partner(), &w);
            prop_assert_eq!(sum, 2 * w.w() + 1);
        }
    }

    #[test]
    fn contributing_set_is_a_flag(w in weights()) {
        prop_assert!(derive_parabolic(contributing_set(&w)).is_ok());
    }

    #[test]
    fn negative_hodge_numbers_contribute(w in weights()) {
        match HodgeProfile::new(&w) {
            Ok(h) => {
                let s = contributing_set(&w);
                for l in ConstituentLabel::all() {
                    prop_assert_eq!(h.hodge_number(l) + h.hodge_number(l.partner()), -1);
                    prop_assert_eq!(s.contains(l), h.hodge_number(l) < 0);
                }
            }
            Err(e) => {
                prop_assert!(matches!(e, PanchishkinError::HodgeCollision));
                prop_assert_eq!(w.k2, 2);
            }
        }
    }
}

#[test]
fn edges_are_exactly_the_adjacent_pairs() {
    let mut adjacent = vec![];
    for (n, &a) in Region::ALL.iter().enumerate() {
        for &b in &Region::ALL[n + 1..] {
            if adjacency(a, b) {
                adjacent.push((a, b));
            }
        }
    }
    for e in EDGES {
        assert!(adjacency(e.0, e.1), "{e:?}");
    }
    assert_eq!(adjacent.len(), EDGES.len());
}

#[test]
fn each_edge_meets_geometrically() {
    // some pair of points on either side of the edge differ by a unit step
    for (a, b) in EDGES {
        let pts: Vec<Weights> = lattice(9, 5, 30).collect();
        let near = pts.iter().filter(|w| w.classify() == a).any(|w| {
            [(2, 0), (-2, 0), (0, 2), (0, -2), (1, 1), (1, -1), (-1, 1), (-1, -1)].iter().any(|(x, y)| {
                Weights::new(w.k1, w.k2, w.c1 + x, w.c2 + y).map(|v| v.classify() == b).unwrap_or(false)
            })
        });
        assert!(near, "{a} and {b} do not touch");
    }
}

#[test]
fn non_adjacent_pairs_are_rejected() {
    let e = region_representative(Region::E, 6, 4).unwrap();
    let a = region_representative(Region::A, 6, 4).unwrap();
    assert!(matches!(panchishkin_quotient(Region::E, Region::A, &e, &a), Err(PanchishkinError::NotAdjacent(..))));
}
