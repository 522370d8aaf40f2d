use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{random_degree_form_with, random_form_with, run_suite, simple_random_form_with, RandomSpec, Suite};
use crate::exterior::Form;
use crate::kaehler::KahlerModel;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_forms_have_requested_bidegree(n in 1usize..=3, p in 0usize..=3, q in 0usize..=3, s: u64) {
        let (p, q) = (p.min(n), q.min(n));
        let a = random_form_with(n, p, q, &mut ChaCha8Rng::seed_from_u64(s), 3);
        prop_assert!(a.bidegrees().iter().all(|&b| b == (p, q)));
    }

    #[test]
    fn simple_two_forms_square_to_zero(n in 2usize..=3, s: u64) {
        let a = simple_random_form_with(n, 2, &mut ChaCha8Rng::seed_from_u64(s), 3);
        prop_assert!(a.wedge(&a).unwrap().is_zero());
    }
}

#[test]
fn reports_are_deterministic() {
    let spec = RandomSpec::new(7);
    let shared = KahlerModel::shared(2).unwrap();
    let fresh = KahlerModel::new(2).unwrap();
    for suite in Suite::ALL {
        let a = run_suite(suite, &shared, 6, &spec).to_json_deterministic();
        let b = run_suite(suite, &fresh, 6, &spec).to_json_deterministic();
        assert_eq!(a, b, "{suite}");
    }
}

#[test]
fn trial_streams_are_order_independent() {
    let spec = RandomSpec::new(11);
    let draw = |t| random_degree_form_with(3, 2, &mut spec.rng("x", t), 3);
    let forward: Vec<Form> = (0..5).map(draw).collect();
    let backward: Vec<Form> = (0..5).rev().map(draw).collect();
    assert!(forward.iter().eq(backward.iter().rev()));
}
