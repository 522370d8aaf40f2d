use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{parse_rational, Form, GaussRational};
use crate::harness::random_degree_form_with;

fn form(n: usize, k: usize, seed: u64) -> Form {
    random_degree_form_with(n, k, &mut ChaCha8Rng::seed_from_u64(seed), 3)
}

fn sign(e: usize) -> GaussRational {
    GaussRational::from_int(if e % 2 == 0 { 1 } else { -1 })
}

fn dim_and_degree() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=3).prop_flat_map(|n| (Just(n), 0..=2 * n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn arithmetic_is_exact(n in 1usize..=3, k in 0usize..=2, s1: u64, s2: u64) {
        let a = form(n, k, s1);
        let b = form(n, k, s2);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        let third = GaussRational::ratio(1, 3);
        prop_assert_eq!(a.scale(&third).scale(&GaussRational::from_int(3)), a);
    }

    #[test]
    fn wedge_is_graded_commutative((n, a) in dim_and_degree(), b in 0usize..=3, s1: u64, s2: u64) {
        let b = b.min(2 * n);
        let phi = form(n, a, s1);
        let psi = form(n, b, s2);
        prop_assert_eq!(phi.wedge(&psi).unwrap(), psi.wedge(&phi).unwrap().scale(&sign(a * b)));
    }

    #[test]
    fn wedge_is_associative(n in 1usize..=3, s: [u64; 3]) {
        let [x, y, z] = s.map(|seed| form(n, 1 + (seed % 2) as usize, seed));
        prop_assert_eq!(x.wedge(&y).unwrap().wedge(&z).unwrap(), x.wedge(&y.wedge(&z).unwrap()).unwrap());
    }

    #[test]
    fn inner_product_is_hermitian((n, k) in dim_and_degree(), s1: u64, s2: u64) {
        let a = form(n, k, s1);
        let b = form(n, k, s2);
        prop_assert_eq!(a.inner(&b).unwrap(), b.inner(&a).unwrap().conj());
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!(a.conjugate().norm_sq(), a.norm_sq());
    }

    #[test]
    fn scalar_text_round_trips(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
        let re = BigRational::new(BigInt::from(a), BigInt::from(b));
        let z = GaussRational::new(re.clone(), BigRational::new(BigInt::from(c), BigInt::from(d)));
        prop_assert_eq!(z.to_string().parse::<GaussRational>().unwrap(), z);
        prop_assert_eq!(parse_rational(&re.to_string()).unwrap(), re);
    }
}
