use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, BitXor, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use super::monomial::{Monomial, MAX_DIM};
use super::scalar::GaussRational;
use crate::error::{Error, Result};

/// An element of the complexified exterior algebra over ℂⁿ, stored as a
/// sparse map from basis monomials to exact coefficients. Zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    n: usize,
    terms: BTreeMap<Monomial, GaussRational>,
}

impl Form {
    /// The zero form in dimension `n`. Panics if `n` exceeds [`MAX_DIM`].
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds the supported maximum {MAX_DIM}");
        Form { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: GaussRational) -> Self {
        Self::monomial(n, c, Monomial::ONE)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, GaussRational::from_int(1))
    }

    /// `c · m`. Panics if `m` uses an index above `n`.
    pub fn monomial(n: usize, c: GaussRational, m: Monomial) -> Self {
        assert!(m.max_index() <= n, "monomial {m} does not live in dimension {n}");
        let mut f = Form::zero(n);
        if !c.is_zero() {
            f.terms.insert(m, c);
        }
        f
    }

    /// `c · dz^S ∧ dz̄^T` from 1-based index lists in any order; the
    /// coefficient absorbs the sign of sorting the factors.
    pub fn term(n: usize, c: GaussRational, holo: &[usize], anti: &[usize]) -> Result<Self> {
        let mut acc = Form::constant(n, c);
        for &i in holo {
            acc = acc.wedge(&Form::dz(n, i)?)?;
        }
        let mut tail = Form::one(n);
        for &j in anti {
            tail = tail.wedge(&Form::dzb(n, j)?)?;
        }
        acc.wedge(&tail)
    }

    pub fn dz(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::usage(format!("index {i} out of range 1..={n}")));
        }
        Ok(Self::monomial(n, GaussRational::from_int(1), Monomial::from_indices(&[i], &[]).unwrap()))
    }

    pub fn dzb(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::usage(format!("index {i} out of range 1..={n}")));
        }
        Ok(Self::monomial(n, GaussRational::from_int(1), Monomial::from_indices(&[], &[i]).unwrap()))
    }

    /// Collects `(monomial, coefficient)` pairs, summing repeats and dropping zeros.
    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, GaussRational)>,
    {
        let mut f = Form::zero(n);
        for (m, c) in terms {
            assert!(m.max_index() <= n, "monomial {m} does not live in dimension {n}");
            f.accumulate(m, &c);
        }
        f
    }

    fn accumulate(&mut self, m: Monomial, c: &GaussRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn accumulate_signed(&mut self, m: Monomial, sign: i8, c: GaussRational) {
        if sign < 0 {
            self.accumulate(m, &-c)
        } else {
            self.accumulate(m, &c)
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(|m| m.degree()).collect()
    }

    pub fn bidegrees(&self) -> BTreeSet<(usize, usize)> {
        self.terms.keys().map(|m| (m.p(), m.q())).collect()
    }

    /// `Some(k)` when every term has degree `k`. The zero form is homogeneous
    /// of every degree and reports `None` here.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.degrees();
        if d.len() == 1 {
            d.into_iter().next()
        } else {
            None
        }
    }

    pub fn homogeneous_bidegree(&self) -> Option<(usize, usize)> {
        let d = self.bidegrees();
        if d.len() == 1 {
            d.into_iter().next()
        } else {
            None
        }
    }

    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == k)
    }

    pub fn scale(&self, c: &GaussRational) -> Form {
        if c.is_zero() {
            return Form::zero(self.n);
        }
        Form { n: self.n, terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Form {
        self.scale(&GaussRational::real(r.clone()))
    }

    /// Applies `f` to every coefficient, keeping monomials.
    pub fn map_coefficients(&self, f: impl Fn(&Monomial, &GaussRational) -> GaussRational) -> Form {
        Form::from_terms(self.n, self.terms.iter().map(|(m, c)| (*m, f(m, c))))
    }

    fn check_dim(&self, other: &Form) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Form) -> Result<Form> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(*m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Form) -> Result<Form> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(*m, &-c);
        }
        Ok(out)
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Form) -> Result<Form> {
        self.check_dim(other)?;
        let mut out = Form::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((sign, m)) = ma.wedge(*mb) {
                    out.accumulate_signed(m, sign, ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// Complex conjugation: conjugates coefficients and swaps `S ↔ T`.
    pub fn conjugate(&self) -> Form {
        let mut out = Form::zero(self.n);
        for (m, c) in &self.terms {
            let (sign, mc) = m.conjugate();
            out.accumulate_signed(mc, sign, c.conj());
        }
        out
    }

    /// Projection onto the `(p, q)` component.
    pub fn bidegree_project(&self, p: usize, q: usize) -> Form {
        self.filter(|m| m.p() == p && m.q() == q)
    }

    /// Projection onto the total-degree-`k` component.
    pub fn degree_part(&self, k: usize) -> Form {
        self.filter(|m| m.degree() == k)
    }

    fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Form {
        Form {
            n: self.n,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Pointwise Hermitian product `⟨self, other⟩`, linear in `self` and
    /// conjugate-linear in `other`; basis monomials are orthonormal.
    pub fn inner(&self, other: &Form) -> Result<GaussRational> {
        self.check_dim(other)?;
        let (small, large, swap) =
            if self.len() <= other.len() { (self, other, false) } else { (other, self, true) };
        let mut acc = GaussRational::zero();
        for (m, c) in &small.terms {
            if let Some(d) = large.terms.get(m) {
                if swap {
                    acc += d * &c.conj();
                } else {
                    acc += c * &d.conj();
                }
            }
        }
        Ok(acc)
    }

    /// `|self|² = Σ |c_μ|²`.
    pub fn norm_sq(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c.norm_sq())
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *m == Monomial::ONE {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[n={}]({})", self.n, self)
    }
}

// Operator sugar panics on a dimension mismatch; the `try_*`/`wedge` methods
// report it as an error instead.
impl Add for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        self.try_add(rhs).expect("form dimensions must agree")
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        self.try_sub(rhs).expect("form dimensions must agree")
    }
}

impl BitXor for &Form {
    type Output = Form;
    fn bitxor(self, rhs: &Form) -> Form {
        self.wedge(rhs).expect("form dimensions must agree")
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        Form { n: self.n, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}
