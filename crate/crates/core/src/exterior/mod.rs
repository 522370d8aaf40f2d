//! Exact complexified exterior algebra over the model Hermitian space ℂⁿ.
//!
//! Conventions: `g_{αβ̄} = δ_{αβ}`, the monomials `dz^S ∧ dz̄^T` form an
//! orthonormal basis, and the Kähler form is `ω = i Σ_α dz^α ∧ dz̄^α`
//! (so `|ω|² = n` and `dV = ωⁿ/n!` has unit norm).

mod form;
mod monomial;
mod scalar;

#[cfg(test)]
mod props;

pub use form::Form;
pub use monomial::{Monomial, MAX_DIM};
pub use scalar::GaussRational;
pub use scalar::parse_rational;

use num_rational::BigRational;

use crate::error::Result;

pub fn wedge(a: &Form, b: &Form) -> Result<Form> {
    a.wedge(b)
}

pub fn conjugate(a: &Form) -> Form {
    a.conjugate()
}

pub fn bidegree_project(a: &Form, p: usize, q: usize) -> Form {
    a.bidegree_project(p, q)
}

pub fn inner(a: &Form, b: &Form) -> Result<GaussRational> {
    a.inner(b)
}

pub fn norm_sq(a: &Form) -> BigRational {
    a.norm_sq()
}
