use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::KahlerModel;
use crate::exterior::{Form, GaussRational};
use crate::harness::random_degree_form_with;

fn model(n: usize) -> std::sync::Arc<KahlerModel> {
    KahlerModel::shared(n).unwrap()
}

fn form(n: usize, k: usize, seed: u64) -> Form {
    random_degree_form_with(n, k, &mut ChaCha8Rng::seed_from_u64(seed), 3)
}

fn dim_and_degree() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=3).prop_flat_map(|n| (Just(n), 0..=2 * n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn star_is_an_isometric_involution_up_to_sign((n, k) in dim_and_degree(), s: u64) {
        let m = model(n);
        let a = form(n, k, s);
        let star = m.hodge_star(&a).unwrap();
        let sign = GaussRational::from_int(if k % 2 == 0 { 1 } else { -1 });
        prop_assert_eq!(star.norm_sq(), a.norm_sq());
        prop_assert_eq!(m.hodge_star(&star).unwrap(), a.scale(&sign));
        prop_assert_eq!(m.hodge_star_inverse(&star).unwrap(), a);
    }

    #[test]
    fn lefschetz_commutator((n, k) in dim_and_degree(), s: u64) {
        let m = model(n);
        let a = form(n, k, s);
        let ll = m.lefschetz(&m.dual_lefschetz(&a).unwrap()).unwrap();
        let rl = m.dual_lefschetz(&m.lefschetz(&a).unwrap()).unwrap();
        prop_assert_eq!(&rl - &ll, a.scale(&GaussRational::from_int(n as i64 - k as i64)));
    }

    #[test]
    fn primitive_projection_is_idempotent((n, k) in dim_and_degree(), s: u64) {
        prop_assume!(k <= n);
        let m = model(n);
        let p = m.project_primitive(&form(n, k, s), k).unwrap();
        prop_assert!(m.is_primitive(&p).unwrap());
        prop_assert_eq!(m.project_primitive(&p, k).unwrap(), p);
    }

    #[test]
    fn decomposition_round_trips((n, k) in dim_and_degree(), s: u64) {
        let m = model(n);
        let a = form(n, k, s);
        let d = m.primitive_decompose(&a, k).unwrap();
        for r in m.decomposition_range(k) {
            prop_assert!(m.is_primitive(&d.part(r)).unwrap());
        }
        prop_assert_eq!(m.recompose(&d).unwrap(), a);
    }
}
