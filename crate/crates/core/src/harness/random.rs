use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::{Form, GaussRational, Monomial};
use crate::kaehler::KahlerModel;

/// Seeding data for random forms. Every `(stream, trial)` pair gets its own
/// generator, so results do not depend on the order trials run in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSpec {
    pub seed: u64,
    /// Coefficients are Gaussian integers with `|re|, |im| ≤ bound`.
    pub bound: i64,
}

impl RandomSpec {
    pub fn new(seed: u64) -> Self {
        RandomSpec { seed, bound: 3 }
    }

    pub fn with_bound(mut self, bound: i64) -> Self {
        self.bound = bound.max(1);
        self
    }

    /// Generator for `trial` within the stream named `stream`.
    pub fn rng(&self, stream: &str, trial: u64) -> ChaCha8Rng {
        let s = splitmix64(self.seed) ^ splitmix64(fnv1a(stream).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ trial);
        ChaCha8Rng::seed_from_u64(s)
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub fn random_coefficient<R: Rng>(rng: &mut R, bound: i64) -> GaussRational {
    GaussRational::from_ints(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

fn fill<R: Rng>(n: usize, basis: &[Monomial], rng: &mut R, bound: i64) -> Form {
    Form::from_terms(n, basis.iter().map(|m| (*m, random_coefficient(rng, bound))))
}

/// Random `(p,q)`-form with independent coefficients on every monomial.
pub fn random_form_with<R: Rng>(n: usize, p: usize, q: usize, rng: &mut R, bound: i64) -> Form {
    fill(n, &Monomial::of_bidegree(n, p, q), rng, bound)
}

/// Random homogeneous form of total degree `k` (all bidegrees mixed).
pub fn random_degree_form_with<R: Rng>(n: usize, k: usize, rng: &mut R, bound: i64) -> Form {
    fill(n, &Monomial::of_degree(n, k), rng, bound)
}

/// Wedge of `k` random complex 1-forms, hence simple.
pub fn simple_random_form_with<R: Rng>(n: usize, k: usize, rng: &mut R, bound: i64) -> Form {
    let ones = Monomial::of_degree(n, 1);
    (0..k).fold(Form::one(n), |acc, _| acc.wedge(&fill(n, &ones, rng, bound)).expect("same dimension"))
}

/// Random primitive form of degree `k`, or of bidegree `(p,q)` when given,
/// obtained by orthogonal projection onto `ker Λ`.
pub fn random_primitive_with<R: Rng>(
    model: &KahlerModel,
    k: usize,
    bidegree: Option<(usize, usize)>,
    rng: &mut R,
    bound: i64,
) -> Form {
    let n = model.n();
    let raw = match bidegree {
        Some((p, q)) => random_form_with(n, p, q, rng, bound),
        None => random_degree_form_with(n, k, rng, bound),
    };
    model.project_primitive(&raw, k).expect("same dimension")
}

pub fn random_form(n: usize, p: usize, q: usize, spec: &RandomSpec) -> Form {
    random_form_with(n, p, q, &mut spec.rng("random_form", 0), spec.bound)
}

pub fn simple_random_form(n: usize, k: usize, spec: &RandomSpec) -> Form {
    simple_random_form_with(n, k, &mut spec.rng("simple_random_form", 0), spec.bound)
}

pub fn random_primitive(model: &KahlerModel, k: usize, spec: &RandomSpec) -> Form {
    random_primitive_with(model, k, None, &mut spec.rng("random_primitive", 0), spec.bound)
}
