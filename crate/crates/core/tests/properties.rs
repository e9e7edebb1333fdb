use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use voaforge_core::properties::{
    canonical_idempotence, grading_additivity, locality_bound, random_element, random_word, skew_symmetry, verify_engine_properties,
    zero_mode_derivation,
};
use voaforge_core::{sample, Expr, LieAlgebra};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 128, rng_seed: RngSeed::Fixed(0), failure_persistence: None, ..ProptestConfig::default() }
}

fn elements(count: usize, max_weight: i64) -> impl Strategy<Value = Vec<(Expr, i64)>> {
    any::<u64>().prop_map(move |seed| {
        let mut rng = sample::rng(seed);
        (0..count).map(|_| random_element(&mut rng, max_weight)).collect()
    })
}

fn words(count: usize, max_weight: i64) -> impl Strategy<Value = Vec<(Expr, i64)>> {
    any::<u64>().prop_map(move |seed| {
        let mut rng = sample::rng(seed);
        (0..count).map(|_| random_word(&mut rng, max_weight)).collect()
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn circle_products_are_graded(v in words(2, 3), n in -2i64..4) {
        prop_assert_eq!(grading_additivity(&v[0].0, &v[1].0, n), Ok(()));
    }

    #[test]
    fn poles_are_bounded_by_the_weights(v in elements(2, 3), extra in 0i64..3) {
        prop_assert_eq!(locality_bound(&v[0].0, &v[1].0, v[0].1, v[1].1, extra), Ok(()));
    }

    #[test]
    fn skew_symmetry_holds(v in elements(2, 3), n in -1i64..3) {
        prop_assert_eq!(skew_symmetry(&v[0].0, &v[1].0, v[0].1, v[1].1, n), Ok(()));
    }

    #[test]
    fn zero_modes_are_derivations(v in elements(3, 2), n in -1i64..3) {
        prop_assert_eq!(zero_mode_derivation(&v[0].0, &v[1].0, &v[2].0, n), Ok(()));
    }

    #[test]
    fn canonical_form_is_idempotent(v in elements(1, 4)) {
        prop_assert_eq!(canonical_idempotence(&v[0].0, &LieAlgebra::sl2()), Ok(()));
    }
}

#[test]
fn seeded_property_sweep() {
    let report = verify_engine_properties(0, 100);
    assert_eq!(report.checks.len(), 5);
    assert!(report.passed(), "{}", report.render(None));
}
