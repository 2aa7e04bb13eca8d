//! Property tests for the serialization layer, the set algebra and
//! the permutation action.

use fano_designs::design::{build_type, CliqueType, Design};
use fano_designs::geometry::{third_point, PointSet};
use fano_designs::group::Permutation;
use proptest::prelude::*;

fn mask15() -> impl Strategy<Value = u64> {
    0u64..(1 << 15)
}

fn perm15() -> impl Strategy<Value = Permutation> {
    Just((1u8..=15).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).expect("shuffled identity"))
}

proptest! {
    #[test]
    fn point_set_json_round_trip(mask in mask15()) {
        let set = PointSet::from_mask(mask);
        let json = serde_json::to_string(&set).unwrap();
        let back: PointSet = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(set, back);
        let elems: Vec<u8> = serde_json::from_str(&json).unwrap();
        let mut sorted = elems.clone();
        sorted.sort_unstable();
        prop_assert_eq!(elems, sorted, "serialized form is ascending");
    }

    #[test]
    fn permutation_action_is_a_boolean_morphism(
        a in mask15(),
        b in mask15(),
        sigma in perm15(),
    ) {
        let (x, y) = (PointSet::from_mask(a), PointSet::from_mask(b));
        prop_assert_eq!(
            sigma.apply_to_set(x.union(y)),
            sigma.apply_to_set(x).union(sigma.apply_to_set(y))
        );
        prop_assert_eq!(
            sigma.apply_to_set(x.sym_diff(y)),
            sigma.apply_to_set(x).sym_diff(sigma.apply_to_set(y))
        );
        prop_assert_eq!(sigma.apply_to_set(x).len(), x.len());
    }

    #[test]
    fn composition_applies_the_right_factor_first(
        sigma in perm15(),
        tau in perm15(),
        x in 1u8..=15,
    ) {
        prop_assert_eq!(sigma.compose(&tau).apply(x), sigma.apply(tau.apply(x)));
    }

    #[test]
    fn third_point_closes_the_line(a in mask15(), b in mask15()) {
        prop_assume!(a != 0 && b != 0 && a != b);
        let (x, y) = (PointSet::from_mask(a), PointSet::from_mask(b));
        let z = third_point(x, y).unwrap();
        prop_assert_eq!(third_point(x, z).unwrap(), y);
        prop_assert_eq!(third_point(y, z).unwrap(), x);
        prop_assert_eq!(x.sym_diff(y).sym_diff(z), PointSet::EMPTY);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classification_is_relabelling_invariant(sigma in perm15()) {
        for t in CliqueType::ALL {
            let relabelled = build_type(t).relabel(&sigma);
            prop_assert_eq!(relabelled.classify().unwrap(), t);
        }
    }

    #[test]
    fn relabelled_designs_round_trip_as_json(sigma in perm15()) {
        let d = build_type(CliqueType::C2).relabel(&sigma);
        let json = serde_json::to_string(&d).unwrap();
        let back: Design = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(d, back);
    }
}

#[test]
fn unsorted_point_lists_are_rejected() {
    assert!(serde_json::from_str::<PointSet>("[2,1]").is_err());
    assert!(serde_json::from_str::<PointSet>("[1,1,2]").is_err());
    assert!(serde_json::from_str::<PointSet>("[1,2,3]").is_ok());
}
