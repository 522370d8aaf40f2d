//! Exact spectral lower-bound constants for forms on Kähler hyperbolic
//! manifolds. Everything here is a ratio of factorials; no floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn fourth_power(x: BigInt) -> BigInt {
    let sq = &x * &x;
    &sq * &sq
}

fn check_bidegree(n: usize, p: usize, q: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::usage("dimension must be at least 1"));
    }
    if p > n || q > n {
        return Err(Error::usage(format!("bidegree ({p},{q}) out of range for n = {n}")));
    }
    Ok(())
}

fn check_eta_sq(eta_sq: &BigRational) -> Result<()> {
    if !eta_sq.is_positive() {
        return Err(Error::usage(format!("eta_sq must be positive, got {eta_sq}")));
    }
    Ok(())
}

/// Bidegree constant `c_{p,q}`. For `p+q < n` this is
/// `(n-k)!⁴/4 · (p+1)!⁴/(n-q)!⁴`; above the middle it reflects to
/// `c_{n-p,n-q}`.
pub fn c_pq(n: usize, p: usize, q: usize) -> Result<BigRational> {
    check_bidegree(n, p, q)?;
    let k = p + q;
    if k == n {
        return Err(Error::domain("middle degree has no uniform bound"));
    }
    if k > n {
        return c_pq(n, n - p, n - q);
    }
    let num = fourth_power(factorial(n - k)) * fourth_power(factorial(p + 1));
    let den = BigInt::from(4) * fourth_power(factorial(n - q));
    Ok(BigRational::new(num, den))
}

/// Degree constant `c_k = c_{⌈k/2⌉,⌊k/2⌋}`, reflected by `k ↦ 2n-k` above the middle.
pub fn c_k(n: usize, k: usize) -> Result<BigRational> {
    if n == 0 || k > 2 * n {
        return Err(Error::usage(format!("degree {k} out of range for n = {n}")));
    }
    if k == n {
        return Err(Error::domain("middle degree has no uniform bound"));
    }
    if k > n {
        return c_k(n, 2 * n - k);
    }
    c_pq(n, k.div_ceil(2), k / 2)
}

/// Outcome of comparing `c_k` with the minimum of `c_{p,q}` over `p+q = k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CkMinReport {
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "ser_rational")]
    pub c_k: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub min: BigRational,
    pub argmin: (usize, usize),
    pub pass: bool,
}

/// Checks `c_k == min { c_{p,q} : p+q = k }` by enumerating every bidegree
/// with `p, q ≤ n`. Ties in the minimum resolve to the largest `p`.
pub fn verify_ck_is_min(n: usize, k: usize) -> Result<CkMinReport> {
    let ck = c_k(n, k)?;
    let mut best: Option<(BigRational, (usize, usize))> = None;
    for p in (0..=k.min(n)).rev() {
        let q = k - p;
        if q > n {
            continue;
        }
        let v = c_pq(n, p, q)?;
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, (p, q)));
        }
    }
    let (min, argmin) = best.expect("at least one bidegree");
    Ok(CkMinReport { n, k, pass: ck == min, c_k: ck, min, argmin })
}

/// Sandwich satisfied by `c_k`: the unrestricted minimum over `p+q = k` lies
/// below it, and the minimum over `p ≤ q` in the reduced degree
/// (`k` or `2n-k`) lies above it. Returns `(unrestricted, c_k, restricted)`.
pub fn ck_sandwich(n: usize, k: usize) -> Result<(BigRational, BigRational, BigRational)> {
    let full = verify_ck_is_min(n, k)?;
    let kr = if k < n { k } else { 2 * n - k };
    let restricted = (0..=kr / 2)
        .map(|p| c_pq(n, p, kr - p))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .expect("nonempty");
    Ok((full.min, full.c_k, restricted))
}

/// Middle-degree constant for `(p,q)`-forms with `p+q = n`: the minimum of
/// the defined members of `c_{p,q-1}`, `c_{p,q+1}`.
pub fn middle_pq_bound(n: usize, p: usize, q: usize) -> Result<BigRational> {
    check_bidegree(n, p, q)?;
    if p + q != n {
        return Err(Error::usage(format!("({p},{q}) is not of middle degree for n = {n}")));
    }
    let below = if q >= 1 { Some(c_pq(n, p, q - 1)?) } else { None };
    let above = if q < n { Some(c_pq(n, p, q + 1)?) } else { None };
    Ok(below.into_iter().chain(above).min().expect("n ≥ 1 leaves one branch"))
}

/// The same bound stated for `Δ_∂̄ = Δ/2`, i.e. half of [`middle_pq_bound`].
/// This is the constant the underlying estimate delivers before converting
/// back to the full Laplacian.
pub fn middle_pq_bound_dbar(n: usize, p: usize, q: usize) -> Result<BigRational> {
    Ok(middle_pq_bound(n, p, q)? / BigInt::from(2))
}

/// Middle-degree constant for `n`-forms, `min(c_{n-1}, c_{n+1})`.
pub fn middle_k_bound(n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::usage("dimension must be at least 1"));
    }
    Ok(c_k(n, n - 1)?.min(c_k(n, n + 1)?))
}

/// Function-case bound `n²/(4 η²)`.
pub fn function_bound(n: usize, eta_sq: &BigRational) -> Result<BigRational> {
    check_eta_sq(eta_sq)?;
    let n = BigInt::from(n);
    Ok(BigRational::from_integer(&n * &n) / (eta_sq * BigInt::from(4)))
}

/// Bound `(n-k)²/(4 η²)` valid when `φ ∧ η` and `dφ` are primitive.
pub fn primitive_remark_bound(n: usize, k: usize, eta_sq: &BigRational) -> Result<BigRational> {
    if k >= n {
        return Err(Error::usage(format!("need k < n, got k = {k}, n = {n}")));
    }
    function_bound(n - k, eta_sq)
}

pub fn spectral_bound(c: &BigRational, eta_sq: &BigRational) -> Result<BigRational> {
    check_eta_sq(eta_sq)?;
    if c.is_negative() {
        return Err(Error::usage(format!("constant must be nonnegative, got {c}")));
    }
    Ok(c / eta_sq)
}

/// Which constant a [`BoundConstant`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Bidegree,
    Degree,
    MiddleBidegree,
    MiddleDegree,
    Function,
    PrimitiveRemark,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum BoundParams {
    Degree { n: usize, k: usize },
    Bidegree { n: usize, p: usize, q: usize },
}

/// A constant together with where it came from and, optionally, the
/// `‖η‖²` it should be divided by.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundConstant {
    pub kind: BoundKind,
    pub params: BoundParams,
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
    #[serde(serialize_with = "ser_opt_rational")]
    pub eta_sq: Option<BigRational>,
}

impl BoundConstant {
    pub fn bidegree(n: usize, p: usize, q: usize) -> Result<Self> {
        let (kind, value) = if p + q == n {
            (BoundKind::MiddleBidegree, middle_pq_bound(n, p, q)?)
        } else {
            (BoundKind::Bidegree, c_pq(n, p, q)?)
        };
        Ok(BoundConstant { kind, params: BoundParams::Bidegree { n, p, q }, value, eta_sq: None })
    }

    pub fn degree(n: usize, k: usize) -> Result<Self> {
        let (kind, value) =
            if k == n { (BoundKind::MiddleDegree, middle_k_bound(n)?) } else { (BoundKind::Degree, c_k(n, k)?) };
        Ok(BoundConstant { kind, params: BoundParams::Degree { n, k }, value, eta_sq: None })
    }

    pub fn with_eta_sq(mut self, eta_sq: BigRational) -> Result<Self> {
        check_eta_sq(&eta_sq)?;
        self.eta_sq = Some(eta_sq);
        Ok(self)
    }

    /// `value / eta_sq` when an `eta_sq` is attached.
    pub fn spectral(&self) -> Option<BigRational> {
        self.eta_sq.as_ref().map(|e| &self.value / e)
    }
}

/// `"num/den"` (or `"num"` for integers).
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fixed 12-digit decimal rendering, computed exactly before rounding.
pub fn format_decimal(r: &BigRational) -> String {
    let scale = BigInt::from(10).pow(12);
    let scaled = (r * BigRational::from_integer(scale.clone())).round().to_integer();
    let neg = scaled.is_negative();
    let abs = scaled.abs();
    let int = &abs / &scale;
    let frac = &abs % &scale;
    format!("{}{}.{:0>12}", if neg { "-" } else { "" }, int, frac.to_string())
}

pub(crate) fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub(crate) fn ser_opt_rational<S: serde::Serializer>(
    r: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format_rational(r)),
        None => s.serialize_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    /// Independent oracle: the same formula over f64-free u128 arithmetic.
    fn oracle_cpq(n: u128, p: u128, q: u128) -> (u128, u128) {
        fn f(k: u128) -> u128 {
            (1..=k).product()
        }
        let k = p + q;
        if k > n {
            return oracle_cpq(n, n - p, n - q);
        }
        let num = f(n - k).pow(4) * f(p + 1).pow(4);
        let den = 4 * f(n - q).pow(4);
        let g = gcd(num, den);
        (num / g, den / g)
    }

    fn gcd(a: u128, b: u128) -> u128 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn c_pq_examples() {
        assert_eq!(c_pq(3, 1, 0).unwrap(), q(4, 81));
        assert_eq!(c_pq(2, 0, 1).unwrap(), q(1, 4));
        assert_eq!(c_pq(2, 2, 1).unwrap(), q(1, 4));
        assert!(matches!(c_pq(2, 1, 1), Err(Error::Domain(_))));
        assert!(matches!(c_pq(2, 3, 0), Err(Error::Usage(_))));
    }

    #[test]
    fn c_pq_matches_integer_oracle() {
        for n in 1..=6usize {
            for p in 0..=n {
                for qq in 0..=n {
                    if p + qq == n {
                        continue;
                    }
                    let (a, b) = oracle_cpq(n as u128, p as u128, qq as u128);
                    let expected = BigRational::new(BigInt::from(a), BigInt::from(b));
                    assert_eq!(c_pq(n, p, qq).unwrap(), expected, "n={n} p={p} q={qq}");
                }
            }
        }
    }

    #[test]
    fn c_k_examples() {
        assert_eq!(c_k(3, 1).unwrap(), q(4, 81));
        assert_eq!(c_k(2, 0).unwrap(), q(1, 4));
        assert_eq!(c_k(3, 5).unwrap(), c_k(3, 1).unwrap());
        assert!(matches!(c_k(3, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn reflection_symmetry() {
        for n in 1..=6 {
            for p in 0..=n {
                for qq in 0..=n {
                    if p + qq != n {
                        assert_eq!(c_pq(n, p, qq).unwrap(), c_pq(n, n - p, n - qq).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn ck_min_report_small_cases() {
        let r = verify_ck_is_min(3, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.argmin, (1, 0));
        assert_eq!(r.min, q(4, 81));

        // The unrestricted minimum at n = 4, k = 2 sits at (2,0), below c_k.
        let r = verify_ck_is_min(4, 2).unwrap();
        assert_eq!(r.c_k, q(4, 81));
        assert_eq!(r.min, q(1, 64));
        assert_eq!(r.argmin, (2, 0));
        assert!(!r.pass);
    }

    #[test]
    fn ck_sandwich_holds_through_n_8() {
        for n in 1..=8 {
            for k in (0..=2 * n).filter(|&k| k != n) {
                let (lo, ck, hi) = ck_sandwich(n, k).unwrap();
                assert!(lo <= ck && ck <= hi, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn middle_pq_examples() {
        assert_eq!(middle_pq_bound(2, 1, 1).unwrap(), q(1, 4));
        // c_{1,1} = 1/4 and c_{1,3} reflects to c_{2,0} = 1/4.
        assert_eq!(c_pq(3, 1, 3).unwrap(), q(1, 4));
        assert_eq!(middle_pq_bound(3, 1, 2).unwrap(), q(1, 4));
        assert_eq!(middle_pq_bound(2, 2, 0).unwrap(), q(1, 4));
        assert!(middle_pq_bound(2, 1, 0).is_err());
        assert_eq!(middle_pq_bound_dbar(2, 1, 1).unwrap(), q(1, 8));
    }

    #[test]
    fn middle_k_is_quarter() {
        for n in 1..=8 {
            assert_eq!(middle_k_bound(n).unwrap(), q(1, 4), "n={n}");
        }
    }

    #[test]
    fn function_and_remark_bounds() {
        for n in 1..=5 {
            assert_eq!(function_bound(n, &q(1, 2)).unwrap(), q((n * n) as i64, 2));
            assert_eq!(primitive_remark_bound(n, 0, &q(3, 7)).unwrap(), function_bound(n, &q(3, 7)).unwrap());
        }
        assert_eq!(function_bound(1, &q(1, 1)).unwrap(), q(1, 4));
        assert_eq!(function_bound(4, &q(2, 1)).unwrap(), q(2, 1));
        assert_eq!(primitive_remark_bound(3, 1, &q(1, 1)).unwrap(), q(1, 1));
        assert_eq!(primitive_remark_bound(5, 2, &q(1, 2)).unwrap(), q(9, 2));
        assert!(primitive_remark_bound(3, 3, &q(1, 1)).is_err());
        assert!(function_bound(3, &q(0, 1)).is_err());
        assert!(function_bound(3, &q(-1, 1)).is_err());
    }

    #[test]
    fn spectral_bound_examples() {
        assert_eq!(spectral_bound(&q(1, 4), &q(1, 2)).unwrap(), q(1, 2));
        assert_eq!(spectral_bound(&q(0, 1), &q(5, 3)).unwrap(), q(0, 1));
        assert_eq!(spectral_bound(&q(4, 81), &q(1, 1)).unwrap(), q(4, 81));
        assert!(spectral_bound(&q(1, 4), &q(0, 1)).is_err());
    }

    #[test]
    fn ck_nonincreasing_in_n() {
        for k in 0..=6 {
            let vals: Vec<BigRational> = (k + 1..=8).map(|n| c_k(n, k).unwrap()).collect();
            assert!(vals.windows(2).all(|w| w[1] <= w[0]), "k={k}");
        }
    }

    #[test]
    fn bound_constant_carries_eta() {
        let b = BoundConstant::degree(3, 1).unwrap().with_eta_sq(q(1, 2)).unwrap();
        assert_eq!(b.spectral(), Some(q(8, 81)));
        assert_eq!(BoundConstant::degree(3, 3).unwrap().kind, BoundKind::MiddleDegree);
        assert!(BoundConstant::degree(3, 1).unwrap().with_eta_sq(q(0, 1)).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(format_rational(&q(4, 81)), "4/81");
        assert_eq!(format_rational(&q(6, 3)), "2");
        assert_eq!(format_decimal(&q(4, 81)), "0.049382716049");
        assert_eq!(format_decimal(&q(16, 3)), "5.333333333333");
        assert_eq!(format_decimal(&q(-1, 8)), "-0.125000000000");
    }
}
