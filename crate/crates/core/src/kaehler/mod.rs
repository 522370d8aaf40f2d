//! Kähler operators at a point: `L`, `Λ`, the Hodge star, the Weil operator,
//! the Hodge–Riemann pairing and the primitive decomposition.
//!
//! The free functions go through a shared per-dimension [`KahlerModel`], so
//! operator matrices are built once per process.

mod matrix;
mod model;

pub use matrix::Matrix;
pub use model::{Grade, KahlerModel, OperatorMatrix, PrimitiveDecomposition, StarFault};

use crate::error::Result;
use crate::exterior::{Form, GaussRational};

fn model_of(a: &Form) -> Result<std::sync::Arc<KahlerModel>> {
    KahlerModel::shared(a.n())
}

pub fn kahler_form(n: usize) -> Result<Form> {
    Ok(KahlerModel::shared(n)?.kahler_form())
}

pub fn volume_form(n: usize) -> Result<Form> {
    Ok(KahlerModel::shared(n)?.volume_form())
}

pub fn lefschetz(a: &Form) -> Result<Form> {
    model_of(a)?.lefschetz(a)
}

pub fn lefschetz_power(a: &Form, j: usize) -> Result<Form> {
    model_of(a)?.lefschetz_power(a, j)
}

pub fn dual_lefschetz(a: &Form) -> Result<Form> {
    model_of(a)?.dual_lefschetz(a)
}

pub fn hodge_star(a: &Form) -> Result<Form> {
    model_of(a)?.hodge_star(a)
}

pub fn weil_operator(a: &Form) -> Result<Form> {
    model_of(a)?.weil_operator(a)
}

pub fn hr_pairing(a: &Form, b: &Form) -> Result<GaussRational> {
    model_of(a)?.hr_pairing(a, b)
}

pub fn is_primitive(a: &Form) -> Result<bool> {
    model_of(a)?.is_primitive(a)
}

pub fn primitive_basis(n: usize, k: usize) -> Result<Vec<Form>> {
    Ok(KahlerModel::shared(n)?.primitive_basis(k).to_vec())
}

/// Decomposes a homogeneous form; the zero form decomposes in degree 0.
pub fn primitive_decompose(a: &Form) -> Result<PrimitiveDecomposition> {
    let k = match a.homogeneous_degree() {
        Some(k) => k,
        None if a.is_zero() => 0,
        None => return Err(crate::error::Error::usage("primitive decomposition needs a homogeneous form")),
    };
    model_of(a)?.primitive_decompose(a, k)
}

pub fn recompose(d: &PrimitiveDecomposition) -> Result<Form> {
    KahlerModel::shared(d.n)?.recompose(d)
}

#[cfg(test)]
mod props;
