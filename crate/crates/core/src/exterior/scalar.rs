//! Exact Gaussian rationals `a + b i` with `a, b ∈ ℚ`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of ℚ(i). Both parts are always kept in reduced form by
/// `BigRational`, so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    re: BigRational,
    im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRational { re, im: BigRational::zero() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRational {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_ints(v, 0)
    }

    /// `num/den` as a real scalar. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    /// `i^k` for any integer exponent.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::from_int(1),
            1 => Self::from_ints(0, 1),
            2 => Self::from_int(-1),
            _ => Self::from_ints(0, -1),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRational { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|² = a² + b²`.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = self.norm_sq();
        Some(GaussRational { re: &self.re / &d, im: -(&self.im / &d) })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        GaussRational { re: &self.re * r, im: &self.im * r }
    }

    /// Multiply by `i^k` without general multiplication.
    pub fn mul_i_pow(&self, k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => self.clone(),
            1 => GaussRational { re: -&self.im, im: self.re.clone() },
            2 => -self,
            _ => GaussRational { re: self.im.clone(), im: -&self.re },
        }
    }

    /// Closest `f64` pair, for decimal reporting only.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl Zero for GaussRational {
    fn zero() -> Self {
        GaussRational { re: BigRational::zero(), im: BigRational::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<BigRational> for GaussRational {
    fn from(re: BigRational) -> Self {
        Self::real(re)
    }
}

impl From<i64> for GaussRational {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRational::real(&self.re * &rhs.re);
        }
        GaussRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'a> Div<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    /// Panics on division by zero, like the rational division it wraps.
    fn div(self, rhs: &GaussRational) -> GaussRational {
        let inv = rhs.inv().expect("division of a Gaussian rational by zero");
        self * &inv
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational { re: -&self.re, im: -&self.im }
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational { re: -self.re, im: -self.im }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussRational> for GaussRational {
            type Output = GaussRational;
            fn $m(self, rhs: GaussRational) -> GaussRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussRational> for GaussRational {
            type Output = GaussRational;
            fn $m(self, rhs: &GaussRational) -> GaussRational {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GaussRational> for GaussRational {
    fn add_assign(&mut self, rhs: &GaussRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign for GaussRational {
    fn add_assign(&mut self, rhs: GaussRational) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl SubAssign<&GaussRational> for GaussRational {
    fn sub_assign(&mut self, rhs: &GaussRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussRational> for GaussRational {
    fn mul_assign(&mut self, rhs: &GaussRational) {
        *self = &*self * rhs;
    }
}

impl Sum for GaussRational {
    fn sum<I: Iterator<Item = GaussRational>>(iter: I) -> Self {
        iter.fold(GaussRational::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl<'a> Sum<&'a GaussRational> for GaussRational {
    fn sum<I: Iterator<Item = &'a GaussRational>>(iter: I) -> Self {
        iter.fold(GaussRational::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

/// Renders `a`, `bi`, `a+bi` or `a-bi` with `a`, `b` as `num/den`
/// (denominator omitted when it is 1).
impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, self.im.abs())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaussRational({self})")
    }
}

/// Parses `a` or `a/b` as an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let r: BigRational = s.parse().map_err(|_| Error::parse(format!("not a rational: {s:?}")))?;
    Ok(r)
}

impl FromStr for GaussRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::parse("empty scalar"));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(GaussRational::real(parse_rational(&s)?));
        };
        // Split at the last sign that is not leading.
        let split = body
            .char_indices()
            .filter(|&(idx, c)| idx > 0 && (c == '+' || c == '-'))
            .map(|(idx, _)| idx)
            .last();
        let (re_str, im_str) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("", body),
        };
        let im = match im_str {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
        };
        let re = if re_str.is_empty() { BigRational::zero() } else { parse_rational(re_str)? };
        Ok(GaussRational { re, im })
    }
}
