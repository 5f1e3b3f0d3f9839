use proptest::collection::vec;
use proptest::prelude::*;

use selpred::oracle::{emd_brute_force, emd_transport};
use selpred::statistics::{emd, emd_equal_length};

fn point() -> impl Strategy<Value = f64> {
    prop_oneof![
        Just(0.0),
        Just(1.0),
        (0u8..=4).prop_map(|v| f64::from(v) / 4.0),
        0.0f64..=1.0
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn equal_sizes_agree_with_matching(pair in (1usize..=6).prop_flat_map(|n| (vec(point(), n), vec(point(), n)))) {
        let (x, y) = pair;
        let fast = emd(&x, &y).unwrap();
        prop_assert!((fast - emd_brute_force(&x, &y).unwrap()).abs() < 1e-9);
        prop_assert!((fast - emd_equal_length(&x, &y).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn unequal_sizes_agree_with_transport(x in vec(point(), 1..=6), y in vec(point(), 1..=6)) {
        prop_assert!((emd(&x, &y).unwrap() - emd_transport(&x, &y).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn duplicating_a_sample_leaves_the_distance_unchanged(x in vec(point(), 1..=5), y in vec(point(), 1..=5)) {
        let doubled: Vec<f64> = x.iter().chain(&x).copied().collect();
        prop_assert!((emd(&x, &y).unwrap() - emd(&doubled, &y).unwrap()).abs() < 1e-12);
    }
}
