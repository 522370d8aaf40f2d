use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::random::{random_degree_form_with, random_form_with, random_primitive_with, simple_random_form_with};
use super::{RandomSpec, Recorder, SuiteReport};
use crate::exterior::{Form, GaussRational};
use crate::kaehler::{KahlerModel, Matrix};

fn fact(k: usize) -> BigRational {
    BigRational::from_integer((1..=k).fold(BigInt::one(), |a, i| a * BigInt::from(i)))
}

fn real(r: BigRational) -> GaussRational {
    GaussRational::real(r)
}

fn binom(a: usize, b: usize) -> BigRational {
    fact(a) / (fact(b) * fact(a - b))
}

fn pair(a: &Form, b: &Form) -> String {
    format!("phi = {a}; psi = {b}")
}

fn inner(a: &Form, b: &Form) -> GaussRational {
    a.inner(b).expect("same dimension")
}

fn power(model: &KahlerModel, a: &Form, j: usize) -> Form {
    model.lefschetz_power(a, j).expect("same dimension")
}

/// `⟨L^j φ, L^j ψ⟩ = j!(n-k)!/(n-k-j)! ⟨φ, ψ⟩` for primitive `φ, ψ` of degree
/// `k ≤ n`; for `j > n-k` checks `L^j φ = 0` instead.
pub fn check_primitive_norms(model: &KahlerModel, k: usize, j: usize, trials: u64, spec: &RandomSpec) -> SuiteReport {
    let start = Instant::now();
    let mut rec = Recorder::default();
    primitive_norms_into(&mut rec, model, k, &[j], trials, spec);
    rec.finish("prop31", model.n(), trials, spec.seed, start)
}

fn primitive_norms_into(rec: &mut Recorder, model: &KahlerModel, k: usize, js: &[usize], trials: u64, spec: &RandomSpec) {
    let n = model.n();
    if k > n {
        return;
    }
    for t in 0..trials {
        let mut rng = spec.rng(&format!("primitive_norms/{k}"), t);
        let phi = random_primitive_with(model, k, None, &mut rng, spec.bound);
        let psi = random_primitive_with(model, k, None, &mut rng, spec.bound);
        let base = inner(&phi, &psi);
        for &j in js {
            let lphi = power(model, &phi, j);
            if j > n - k {
                let zero = Form::zero(n);
                rec.check(&format!("lefschetz_kills_primitive[k={k},j={j}]"), t, || pair(&phi, &psi), &lphi, &zero);
                continue;
            }
            let lpsi = power(model, &psi, j);
            let factor = fact(j) * fact(n - k) / fact(n - k - j);
            rec.check(
                &format!("primitive_norm[k={k},j={j}]"),
                t,
                || pair(&phi, &psi),
                &inner(&lphi, &lpsi),
                &(&base * &real(factor)),
            );
        }
    }
}

pub(super) fn primitive_norms_suite(model: &KahlerModel, trials: u64, spec: &RandomSpec) -> SuiteReport {
    let start = Instant::now();
    let n = model.n();
    let mut rec = Recorder::default();
    for k in 0..=n {
        let js: Vec<usize> = (0..=n - k + 1).collect();
        primitive_norms_into(&mut rec, model, k, &js, trials, spec);
    }
    rec.finish("prop31", n, trials, spec.seed, start)
}

/// The three norm expansions through the primitive decomposition, for random
/// (not necessarily equal) `φ, ψ` of degree `k < n`.
pub fn check_decomposition_norms(model: &KahlerModel, k: usize, trials: u64, spec: &RandomSpec) -> crate::Result<SuiteReport> {
    let n = model.n();
    if k >= n {
        return Err(crate::Error::usage(format!("decomposition norms need k < n, got k = {k}, n = {n}")));
    }
    let start = Instant::now();
    let mut rec = Recorder::default();
    decomposition_norms_into(&mut rec, model, k, trials, spec);
    Ok(rec.finish("lemma32", n, trials, spec.seed, start))
}

fn decomposition_norms_into(rec: &mut Recorder, model: &KahlerModel, k: usize, trials: u64, spec: &RandomSpec) {
    let n = model.n();
    for t in 0..trials {
        let mut rng = spec.rng(&format!("decomposition_norms/{k}"), t);
        let phi = random_degree_form_with(n, k, &mut rng, spec.bound);
        let psi = random_degree_form_with(n, k, &mut rng, spec.bound);
        let dphi = model.primitive_decompose(&phi, k).expect("homogeneous");
        let dpsi = model.primitive_decompose(&psi, k).expect("homogeneous");
        let mut sums = [GaussRational::zero(), GaussRational::zero(), GaussRational::zero()];
        for r in model.decomposition_range(k) {
            let ip = inner(&dphi.part(r), &dpsi.part(r));
            let m = n - k;
            let coeffs = [
                fact(r) * fact(m + 2 * r) / fact(m + r),
                fact(m + r) * fact(m + 2 * r) / fact(r),
                fact(m - 1 + r) * fact(m + 2 * r) / fact(r + 1),
            ];
            for (s, c) in sums.iter_mut().zip(coeffs) {
                *s += &ip * &real(c);
            }
        }
        let lhs = [
            inner(&phi, &psi),
            inner(&power(model, &phi, n - k), &power(model, &psi, n - k)),
            inner(&power(model, &phi, n - k - 1), &power(model, &psi, n - k - 1)),
        ];
        for (idx, (l, s)) in lhs.iter().zip(&sums).enumerate() {
            rec.check(&format!("decomposition_norm_{}[k={k}]", idx + 1), t, || pair(&phi, &psi), l, s);
        }
    }
}

pub(super) fn decomposition_norms_suite(model: &KahlerModel, trials: u64, spec: &RandomSpec) -> SuiteReport {
    let start = Instant::now();
    let mut rec = Recorder::default();
    for k in 0..model.n() {
        decomposition_norms_into(&mut rec, model, k, trials, spec);
    }
    rec.finish("lemma32", model.n(), trials, spec.seed, start)
}

/// Two-sided bounds for a `(p,q)`-form `φ`, `p ≤ q`, `k = p+q < n`:
/// `(n-k)!² |φ|² ≤ |L^{n-k}φ|² ≤ (n-q)!²/p!² |φ|²` and
/// `(n-k-1)!(n-k)! |φ|² ≤ |L^{n-k-1}φ|² ≤ (n-q-1)!(n-q)!/(p!(p+1)!) |φ|²`.
/// Also checks that primitive forms attain the lower bounds and
/// `L^p(dz̄^{1..q-p})` attains the upper ones.
pub fn check_bidegree_bounds(model: &KahlerModel, p: usize, q: usize, trials: u64, spec: &RandomSpec) -> crate::Result<SuiteReport> {
    let n = model.n();
    if p > q || p + q >= n {
        return Err(crate::Error::usage(format!("bidegree bounds need p <= q and p+q < n, got ({p},{q}), n = {n}")));
    }
    let start = Instant::now();
    let mut rec = Recorder::default();
    bidegree_bounds_into(&mut rec, model, p, q, trials, spec);
    Ok(rec.finish("prop33", n, trials, spec.seed, start))
}

struct Ratios {
    low1: BigRational,
    high1: BigRational,
    low2: BigRational,
    high2: BigRational,
}

fn bidegree_ratios(n: usize, p: usize, q: usize) -> Ratios {
    let k = p + q;
    Ratios {
        low1: fact(n - k) * fact(n - k),
        high1: fact(n - q) * fact(n - q) / (fact(p) * fact(p)),
        low2: fact(n - k - 1) * fact(n - k),
        high2: fact(n - q - 1) * fact(n - q) / (fact(p) * fact(p + 1)),
    }
}

fn bidegree_bounds_into(rec: &mut Recorder, model: &KahlerModel, p: usize, q: usize, trials: u64, spec: &RandomSpec) {
    let n = model.n();
    let k = p + q;
    let b = bidegree_ratios(n, p, q);
    let norms = |phi: &Form| {
        (phi.norm_sq(), power(model, phi, n - k).norm_sq(), power(model, phi, n - k - 1).norm_sq())
    };
    let id = |name: &str| format!("{name}[p={p},q={q}]");
    for t in 0..trials {
        let mut rng = spec.rng(&format!("bidegree_bounds/{p},{q}"), t);
        let phi = random_form_with(n, p, q, &mut rng, spec.bound);
        let (a, l1, l2) = norms(&phi);
        let show = || format!("phi = {phi}");
        rec.relation(&id("lower_top"), t, show, &(&b.low1 * &a), &l1, b.low1.clone() * &a <= l1);
        rec.relation(&id("upper_top"), t, show, &l1, &(&b.high1 * &a), l1 <= b.high1.clone() * &a);
        rec.relation(&id("lower_next"), t, show, &(&b.low2 * &a), &l2, b.low2.clone() * &a <= l2);
        rec.relation(&id("upper_next"), t, show, &l2, &(&b.high2 * &a), l2 <= b.high2.clone() * &a);
    }
    // saturation witnesses
    let prim = random_primitive_with(model, k, Some((p, q)), &mut spec.rng(&format!("bidegree_witness/{p},{q}"), 0), spec.bound);
    if !prim.is_zero() {
        let (a, l1, l2) = norms(&prim);
        rec.check(&id("lower_top_attained"), 0, || format!("phi = {prim}"), &l1, &(&b.low1 * &a));
        rec.check(&id("lower_next_attained"), 0, || format!("phi = {prim}"), &l2, &(&b.low2 * &a));
    }
    let anti: Vec<usize> = (1..=q - p).collect();
    let seed_form = Form::term(n, GaussRational::from_int(1), &[], &anti).expect("indices in range");
    let top = power(model, &seed_form, p);
    let (a, l1, l2) = norms(&top);
    rec.check(&id("upper_top_attained"), 0, || format!("phi = {top}"), &l1, &(&b.high1 * &a));
    rec.check(&id("upper_next_attained"), 0, || format!("phi = {top}"), &l2, &(&b.high2 * &a));
}

pub(super) fn bidegree_bounds_suite(model: &KahlerModel, trials: u64, spec: &RandomSpec) -> SuiteReport {
    let start = Instant::now();
    let n = model.n();
    let mut rec = Recorder::default();
    for k in 0..n {
        for p in 0..=k / 2 {
            bidegree_bounds_into(&mut rec, model, p, k - p, trials, spec);
        }
    }
    rec.finish("prop33", n, trials, spec.seed, start)
}

/// All degree pairs `(a, b)` with `a, b ≥ 1` and `a + b ≤ 2n`.
pub fn wedge_degree_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..2 * n).flat_map(|a| (1..=2 * n - a).map(move |b| (a, b))).collect()
}

/// Wedge-norm inequalities. Trial `t` uses degree pair `t mod len`, so
/// `trials` is the total over all pairs.
pub fn check_wedge_norm(model: &KahlerModel, degrees: &[(usize, usize)], trials: u64, spec: &RandomSpec) -> SuiteReport {
    let start = Instant::now();
    let n = model.n();
    let mut rec = Recorder::default();
    if !degrees.is_empty() {
        for t in 0..trials {
            let (a, b) = degrees[(t as usize) % degrees.len()];
            let mut rng = spec.rng("wedge_norm", t);
            let phi = random_degree_form_with(n, a, &mut rng, spec.bound);
            let psi = random_degree_form_with(n, b, &mut rng, spec.bound);
            let simple = simple_random_form_with(n, a, &mut rng, spec.bound);
            let w = phi.wedge(&psi).expect("same dimension").norm_sq();
            let rhs = binom(a + b, a) * phi.norm_sq() * psi.norm_sq();
            let holds = w <= rhs;
            rec.relation(&format!("wedge_norm[a={a},b={b}]"), t, || pair(&phi, &psi), &w, &rhs, holds);
            // the simple factor goes on alternating sides
            let ws = if t % 2 == 0 { simple.wedge(&psi) } else { psi.wedge(&simple) }.expect("same dimension").norm_sq();
            let rhs_s = simple.norm_sq() * psi.norm_sq();
            let holds = ws <= rhs_s;
            rec.relation(&format!("wedge_norm_simple[a={a},b={b}]"), t, || pair(&simple, &psi), &ws, &rhs_s, holds);
        }
    }
    rec.finish("federer", n, trials, spec.seed, start)
}

fn columns_of(model: &KahlerModel, forms: &[Form], degree: usize) -> Matrix {
    let cols: Vec<Vec<GaussRational>> = forms.iter().map(|f| model.to_vector(f, degree)).collect();
    Matrix::from_columns(model.dim(degree), &cols)
}

fn dim_primitive(n: usize, k: usize) -> usize {
    fn c(a: usize, b: isize) -> usize {
        if b < 0 || b as usize > a {
            return 0;
        }
        let b = b as usize;
        (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1))
    }
    if k > n {
        0
    } else {
        c(2 * n, k as isize) - c(2 * n, k as isize - 2)
    }
}

/// Exhaustive rank and kernel checks plus randomized decompositions.
pub fn check_lefschetz_structure(model: &KahlerModel, trials: u64, spec: &RandomSpec) -> SuiteReport {
    let start = Instant::now();
    let n = model.n();
    let mut rec = Recorder::default();
    let none = String::new;
    for k in 0..=2 * n {
        let prim = model.primitive_basis(k);
        rec.check(&format!("primitive_dimension[k={k}]"), 0, none, &prim.len(), &dim_primitive(n, k));
        if k > n {
            continue;
        }
        let images: Vec<Form> = prim.iter().map(|f| power(model, f, n - k)).collect();
        let rank = columns_of(model, &images, 2 * n - k).rank();
        rec.check(&format!("injective_on_primitives[k={k}]"), 0, none, &rank, &prim.len());
        let full = model.lefschetz_power_matrix(k, n - k);
        rec.check(&format!("bijective[k={k}]"), 0, none, &full.rank(), &model.dim(k));
        let kernel = model.lefschetz_power_matrix(k, n - k + 1).nullspace().len();
        rec.check(&format!("kernel_is_primitive[k={k}]"), 0, none, &kernel, &prim.len());
        for (i, f) in prim.iter().enumerate() {
            let img = power(model, f, n - k + 1);
            rec.check(&format!("primitive_in_kernel[k={k}]"), i as u64, || format!("phi = {f}"), &img, &Form::zero(n));
        }
    }
    for k in 0..=2 * n {
        for t in 0..trials {
            let mut rng = spec.rng(&format!("lefschetz/{k}"), t);
            let phi = random_degree_form_with(n, k, &mut rng, spec.bound);
            let show = || format!("phi = {phi}");
            let d = model.primitive_decompose(&phi, k).expect("homogeneous");
            let back = model.recompose(&d).expect("valid decomposition");
            rec.check(&format!("decomposition_roundtrip[k={k}]"), t, show, &back, &phi);
            let range = model.decomposition_range(k);
            let in_range = d.parts.keys().all(|r| range.contains(r));
            rec.relation(&format!("decomposition_range[k={k}]"), t, show, &in_range, &true, in_range);
            let lifted: Vec<(usize, Form)> = d.parts.iter().map(|(r, f)| (*r, power(model, f, *r))).collect();
            for (r, f) in &d.parts {
                let lam = model.dual_lefschetz(f).expect("same dimension");
                rec.check(&format!("part_primitive[k={k},r={r}]"), t, show, &lam, &Form::zero(n));
            }
            for (i, (r, a)) in lifted.iter().enumerate() {
                for (s, b) in &lifted[i + 1..] {
                    rec.check(&format!("parts_orthogonal[k={k},r={r},s={s}]"), t, show, &inner(a, b), &GaussRational::zero());
                }
            }
        }
    }
    rec.finish("lefschetz", n, trials, spec.seed, start)
}

/// `*L^r φ = i^{k(k+1)} r!/(n-k-r)! L^{n-k-r} I(φ)` for primitive `φ`,
/// exhaustively on primitive bases and on random primitives.
fn star_primitive_identity(rec: &mut Recorder, model: &KahlerModel, phi: &Form, k: usize, trial: u64, tag: &str) {
    let n = model.n();
    let weil = model.weil_operator(phi).expect("same dimension");
    for r in 0..=n - k {
        let lhs = model.hodge_star(&power(model, phi, r)).expect("same dimension");
        let c = GaussRational::i_pow((k * (k + 1)) as i64).scale(&(fact(r) / fact(n - k - r)));
        let rhs = power(model, &weil, n - k - r).scale(&c);
        rec.check(&format!("{tag}[k={k},r={r}]"), trial, || format!("phi = {phi}"), &lhs, &rhs);
    }
}

/// Hodge star checks: its action on `L^r` of primitives, `** = (-1)^k`, the
/// defining relation `a ∧ conj(*b) = ⟨a, b⟩ dV`, and `Λ = *⁻¹ L *` as matrices.
pub fn check_star(model: &KahlerModel, trials: u64, spec: &RandomSpec) -> SuiteReport {
    let start = Instant::now();
    let n = model.n();
    let mut rec = Recorder::default();
    let dv = model.volume_form();
    for k in 0..=n {
        for (i, phi) in model.primitive_basis(k).iter().enumerate() {
            star_primitive_identity(&mut rec, model, phi, k, i as u64, "star_on_primitive_basis");
        }
        for t in 0..trials {
            let mut rng = spec.rng(&format!("star_primitive/{k}"), t);
            let phi = random_primitive_with(model, k, None, &mut rng, spec.bound);
            star_primitive_identity(&mut rec, model, &phi, k, t, "star_on_primitive");
        }
    }
    for k in 0..=2 * n {
        for t in 0..trials {
            let mut rng = spec.rng(&format!("star/{k}"), t);
            let a = random_degree_form_with(n, k, &mut rng, spec.bound);
            let b = random_degree_form_with(n, k, &mut rng, spec.bound);
            let sa = model.hodge_star(&a).expect("same dimension");
            let ssa = model.hodge_star(&sa).expect("same dimension");
            let expected = if k % 2 == 0 { a.clone() } else { -&a };
            rec.check(&format!("double_star[k={k}]"), t, || format!("phi = {a}"), &ssa, &expected);
            let sb = model.hodge_star(&b).expect("same dimension");
            let lhs = a.wedge(&sb.conjugate()).expect("same dimension");
            let rhs = dv.scale(&inner(&a, &b));
            rec.check(&format!("star_defining_relation[k={k}]"), t, || pair(&a, &b), &lhs, &rhs);
        }
    }
    for k in 2..=2 * n {
        let adjoint = model.dual_lefschetz_matrix(k).matrix.clone();
        let via_star = model.dual_lefschetz_via_star_matrix(k);
        let eq = adjoint == via_star;
        rec.relation(&format!("dual_lefschetz_routes[k={k}]"), 0, String::new, &format!("{adjoint:?}"), &format!("{via_star:?}"), eq);
    }
    rec.finish("star", n, trials, spec.seed, start)
}

/// `i^{p-q} Q(α, conj β) = (n-k)! ⟨α, β⟩` for primitive `(p,q)`-forms.
pub fn check_hodge_riemann(model: &KahlerModel, trials: u64, spec: &RandomSpec) -> SuiteReport {
    let start = Instant::now();
    let n = model.n();
    let mut rec = Recorder::default();
    for k in 0..=n {
        for p in 0..=k {
            let q = k - p;
            for t in 0..trials {
                let mut rng = spec.rng(&format!("hodge_riemann/{p},{q}"), t);
                let a = random_primitive_with(model, k, Some((p, q)), &mut rng, spec.bound);
                let b = random_primitive_with(model, k, Some((p, q)), &mut rng, spec.bound);
                let lhs = model
                    .hr_pairing(&a, &b.conjugate())
                    .expect("equal degrees")
                    .mul_i_pow(p as i64 - q as i64);
                let rhs = inner(&a, &b) * real(fact(n - k));
                rec.check(&format!("hodge_riemann[p={p},q={q}]"), t, || pair(&a, &b), &lhs, &rhs);
            }
        }
    }
    rec.finish("hodge-riemann", n, trials, spec.seed, start)
}

/// `[L, Λ] = (k-n) Id` on degree `k` and `⟨L a, b⟩ = ⟨a, Λ b⟩`.
pub fn check_sl2(model: &KahlerModel, trials: u64, spec: &RandomSpec) -> SuiteReport {
    let start = Instant::now();
    let n = model.n();
    let mut rec = Recorder::default();
    for k in 0..=2 * n {
        for t in 0..trials {
            let mut rng = spec.rng(&format!("sl2/{k}"), t);
            let a = random_degree_form_with(n, k, &mut rng, spec.bound);
            let l_lam = model.lefschetz(&model.dual_lefschetz(&a).expect("dim")).expect("dim");
            let lam_l = model.dual_lefschetz(&model.lefschetz(&a).expect("dim")).expect("dim");
            let comm = &l_lam - &lam_l;
            let expected = a.scale(&GaussRational::from_int(k as i64 - n as i64));
            rec.check(&format!("commutator[k={k}]"), t, || format!("phi = {a}"), &comm, &expected);
            if k + 2 <= 2 * n {
                let b = random_degree_form_with(n, k + 2, &mut rng, spec.bound);
                let lhs = inner(&model.lefschetz(&a).expect("dim"), &b);
                let rhs = inner(&a, &model.dual_lefschetz(&b).expect("dim"));
                rec.check(&format!("adjoint[k={k}]"), t, || pair(&a, &b), &lhs, &rhs);
            }
        }
    }
    rec.finish("sl2", n, trials, spec.seed, start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Monomial;

    fn model(n: usize) -> std::sync::Arc<KahlerModel> {
        KahlerModel::shared(n).unwrap()
    }

    #[test]
    fn primitive_norm_examples() {
        // n=2, k=1, j=1: |ω ∧ dz¹|² = |dz¹|²
        let m = model(2);
        let dz1 = Form::dz(2, 1).unwrap();
        assert_eq!(power(&m, &dz1, 1).norm_sq(), dz1.norm_sq());
        // n=3, k=1, j=2: factor 2!·2!/0! = 4
        let m3 = model(3);
        let dz1 = Form::dz(3, 1).unwrap();
        assert_eq!(power(&m3, &dz1, 2).norm_sq(), BigRational::from_integer(4.into()));
        let r = check_primitive_norms(&m3, 1, 2, 5, &RandomSpec::new(1));
        assert!(r.pass, "{}", r.to_text());
        // n=4, k=2, j=3 lies above n-k and must vanish
        let r = check_primitive_norms(&model(4), 2, 3, 3, &RandomSpec::new(1));
        assert!(r.pass && r.checks == 3);
    }

    #[test]
    fn decomposition_norm_example() {
        let m = model(3);
        let phi = Form::term(3, GaussRational::from_int(1), &[1], &[1]).unwrap();
        let d = m.primitive_decompose(&phi, 2).unwrap();
        let total: BigRational = m
            .decomposition_range(2)
            .map(|r| fact(r) * fact(1 + 2 * r) / fact(1 + r) * d.part(r).norm_sq())
            .sum();
        assert_eq!(total, BigRational::one());
        assert!(check_decomposition_norms(&model(2), 2, 1, &RandomSpec::new(0)).is_err());
        assert!(check_decomposition_norms(&m, 2, 10, &RandomSpec::new(0)).unwrap().pass);
    }

    #[test]
    fn bidegree_bound_examples() {
        let m = model(3);
        // every (0,1)-form is primitive: both bounds equal 4
        let b = bidegree_ratios(3, 0, 1);
        assert_eq!(b.low1, b.high1);
        assert_eq!(b.low1, BigRational::from_integer(4.into()));
        // ω on (1,1) saturates the upper bound 4
        let w = m.kahler_form();
        let ratio = power(&m, &w, 1).norm_sq() / w.norm_sq();
        assert_eq!(ratio, BigRational::from_integer(4.into()));
        assert_eq!(bidegree_ratios(3, 1, 1).high1, ratio);
        assert!(check_bidegree_bounds(&m, 1, 1, 20, &RandomSpec::new(3)).unwrap().pass);
        assert!(check_bidegree_bounds(&m, 1, 0, 1, &RandomSpec::new(3)).is_err());
    }

    #[test]
    fn wedge_norm_examples() {
        let m = model(2);
        let a = Form::dz(2, 1).unwrap();
        let b = Form::dzb(2, 1).unwrap();
        assert_eq!(a.wedge(&b).unwrap().norm_sq(), BigRational::one());
        let w = m.kahler_form();
        assert_eq!(w.wedge(&Form::one(2)).unwrap().norm_sq(), w.norm_sq());
        let r = check_wedge_norm(&model(3), &wedge_degree_pairs(3), 200, &RandomSpec::new(5));
        assert!(r.pass, "{}", r.to_text());
        assert_eq!(r.checks, 400);
    }

    #[test]
    fn small_suites_pass() {
        for n in 1..=2 {
            let m = model(n);
            let spec = RandomSpec::new(42);
            for s in super::super::Suite::ALL {
                let r = super::super::run_suite(s, &m, 5, &spec);
                assert!(r.pass, "{}", r.to_text());
                assert!(r.checks > 0 || (s == super::super::Suite::DecompositionNorms && n == 0));
            }
        }
    }

    #[test]
    fn star_fault_is_detected() {
        let mu = Monomial::from_indices(&[1], &[]).unwrap();
        let bad = KahlerModel::with_star_fault(2, crate::kaehler::StarFault { monomial: mu }).unwrap();
        let r = check_star(&bad, 3, &RandomSpec::new(42));
        assert!(!r.pass);
    }
}
