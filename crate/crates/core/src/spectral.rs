//! Radial Dirichlet eigenvalues of geodesic balls in real and complex
//! hyperbolic space.
//!
//! The radial Laplacian `-(w u')'/w` is discretized on a cell-centered grid
//! `ρ_j = (j - 1/2) h`, `h = R/N`, with zero flux through the axis and a
//! Dirichlet ghost cell at `ρ = R`. Conjugating by `diag(√w_j)` makes the
//! matrix symmetric tridiagonal. Weights are handled through their logarithms
//! so large radii do not overflow.

use serde::Serialize;

use crate::error::{Error, Result};

/// Smallest grid accepted by [`assemble_tridiagonal`].
pub const MIN_GRID: usize = 16;

/// Default absolute bisection tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RadialModel {
    /// Real hyperbolic space of dimension `m`; the eigenproblem is solved in
    /// curvature `-1` and eigenvalues are multiplied by `curvature`.
    RealHyperbolic { m: usize, curvature: f64 },
    /// Complex hyperbolic space of complex dimension `n`, solved with
    /// holomorphic sectional curvature `-4`; eigenvalues are halved to reach
    /// the `Ric = -(n+1)` normalization.
    ComplexHyperbolic { n: usize },
}

/// `ln sinh ρ` without overflow for large `ρ`.
fn ln_sinh(rho: f64) -> f64 {
    if rho < 1.0 {
        rho.sinh().ln()
    } else {
        rho + (-(-2.0 * rho).exp()).ln_1p() - std::f64::consts::LN_2
    }
}

/// `ln cosh ρ` without overflow for large `ρ`.
fn ln_cosh(rho: f64) -> f64 {
    rho.abs() + (-2.0 * rho.abs()).exp().ln_1p() - std::f64::consts::LN_2
}

impl RadialModel {
    pub fn real(m: usize, curvature: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::usage(format!("real dimension must be at least 2, got {m}")));
        }
        if !(curvature > 0.0 && curvature.is_finite()) {
            return Err(Error::usage(format!("curvature scale must be positive, got {curvature}")));
        }
        Ok(RadialModel::RealHyperbolic { m, curvature })
    }

    pub fn complex(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::usage("complex dimension must be at least 1"));
        }
        Ok(RadialModel::ComplexHyperbolic { n })
    }

    /// Radial density `w(ρ)`: `sinh^{m-1} ρ` or `sinh^{2n-1} ρ · cosh ρ`.
    pub fn weight(&self, rho: f64) -> f64 {
        if rho <= 0.0 {
            return 0.0;
        }
        self.log_weight(rho).exp()
    }

    pub fn log_weight(&self, rho: f64) -> f64 {
        match *self {
            RadialModel::RealHyperbolic { m, .. } => (m as f64 - 1.0) * ln_sinh(rho),
            RadialModel::ComplexHyperbolic { n } => (2 * n - 1) as f64 * ln_sinh(rho) + ln_cosh(rho),
        }
    }

    /// Bottom of the spectrum of the unscaled model: `(m-1)²/4` or `n²`.
    pub fn spectral_bottom(&self) -> f64 {
        match *self {
            RadialModel::RealHyperbolic { m, .. } => (m as f64 - 1.0).powi(2) / 4.0,
            RadialModel::ComplexHyperbolic { n } => (n * n) as f64,
        }
    }

    /// Transport from the solved model to the reported normalization.
    pub fn scale(&self, lambda: f64) -> f64 {
        match *self {
            RadialModel::RealHyperbolic { curvature, .. } => curvature * lambda,
            RadialModel::ComplexHyperbolic { .. } => lambda / 2.0,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            RadialModel::RealHyperbolic { m, curvature } => format!("rh(m={m},K={curvature})"),
            RadialModel::ComplexHyperbolic { n } => format!("ch(n={n})"),
        }
    }
}

/// Symmetric tridiagonal matrix: `diag[j]` and `off[j]` coupling `j`, `j+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl Tridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::usage("tridiagonal needs n diagonal and n-1 off-diagonal entries"));
        }
        Ok(Tridiagonal { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|j| {
                let mut s = self.diag[j] * v[j];
                if j > 0 {
                    s += self.off[j - 1] * v[j - 1];
                }
                if j + 1 < n {
                    s += self.off[j] * v[j + 1];
                }
                s
            })
            .collect()
    }

    /// Gershgorin interval containing the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for j in 0..n {
            let r = if j > 0 { self.off[j - 1].abs() } else { 0.0 } + if j + 1 < n { self.off[j].abs() } else { 0.0 };
            lo = lo.min(self.diag[j] - r);
            hi = hi.max(self.diag[j] + r);
        }
        (lo, hi)
    }

    fn norm_scale(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE)
    }

    /// Number of eigenvalues below `x`, i.e. negative pivots of the `LDLᵀ`
    /// factorization of `T - xI`. Zero pivots are nudged to a tiny negative
    /// value; the number of nudges is returned alongside the count.
    pub fn count_below(&self, x: f64) -> (usize, usize) {
        let tiny = f64::EPSILON * self.norm_scale();
        let mut count = 0;
        let mut nudges = 0;
        let mut d = 1.0;
        for j in 0..self.len() {
            let b2 = if j > 0 { self.off[j - 1] * self.off[j - 1] } else { 0.0 };
            d = self.diag[j] - x - if j > 0 { b2 / d } else { 0.0 };
            if d == 0.0 {
                d = -tiny;
                nudges += 1;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        (count, nudges)
    }
}

/// Assembles the symmetrized radial operator on the ball of radius `R` with `N` cells.
pub fn assemble_tridiagonal(model: &RadialModel, radius: f64, grid: usize) -> Result<Tridiagonal> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::usage(format!("radius must be positive, got {radius}")));
    }
    if grid < MIN_GRID {
        return Err(Error::usage(format!("grid must have at least {MIN_GRID} cells, got {grid}")));
    }
    let h = radius / grid as f64;
    let h2 = h * h;
    let lw_center: Vec<f64> = (1..=grid).map(|j| model.log_weight((j as f64 - 0.5) * h)).collect();
    // faces j + 1/2 for j = 1..N, at ρ = j h
    let lw_face: Vec<f64> = (1..=grid).map(|j| model.log_weight(j as f64 * h)).collect();
    let mut diag = vec![0.0; grid];
    let mut off = vec![0.0; grid - 1];
    for j in 0..grid {
        let mut outer = (lw_face[j] - lw_center[j]).exp();
        if j + 1 == grid {
            // ghost u_{N+1} = -u_N doubles the outer flux
            outer *= 2.0;
        }
        let inner = if j == 0 { 0.0 } else { (lw_face[j - 1] - lw_center[j]).exp() };
        diag[j] = (outer + inner) / h2;
        if j + 1 < grid {
            off[j] = -(lw_face[j] - 0.5 * (lw_center[j] + lw_center[j + 1])).exp() / h2;
        }
    }
    Tridiagonal::new(diag, off)
}

/// Result of Sturm bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    pub value: f64,
    /// Bracket `[lo, hi]` with no eigenvalue below `lo` and one at most `hi`.
    pub lo: f64,
    pub hi: f64,
    pub pivot_nudges: usize,
}

/// Smallest eigenvalue by bisection on the inertia count, bracket width `≤ tol`
/// (or as narrow as floating point allows).
pub fn smallest_eigenvalue(t: &Tridiagonal, tol: f64) -> Result<Bisection> {
    if !(tol > 0.0) {
        return Err(Error::usage(format!("tolerance must be positive, got {tol}")));
    }
    let (mut lo, mut hi) = t.gershgorin();
    let mut nudges = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let (c, z) = t.count_below(mid);
        nudges += z;
        if c >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Bisection { value: 0.5 * (lo + hi), lo, hi, pivot_nudges: nudges })
}

/// Solves `(T - σI) x = b` by the Thomas algorithm (no pivoting).
fn shifted_solve(t: &Tridiagonal, sigma: f64, b: &[f64]) -> Vec<f64> {
    let n = t.len();
    let tiny = f64::EPSILON * t.norm_scale();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut piv = t.diag[0] - sigma;
    if piv == 0.0 {
        piv = tiny;
    }
    if n > 1 {
        c[0] = t.off[0] / piv;
    }
    d[0] = b[0] / piv;
    for j in 1..n {
        let a = t.off[j - 1];
        piv = t.diag[j] - sigma - a * c[j - 1];
        if piv == 0.0 {
            piv = tiny;
        }
        if j + 1 < n {
            c[j] = t.off[j] / piv;
        }
        d[j] = (b[j] - a * d[j - 1]) / piv;
    }
    for j in (0..n - 1).rev() {
        d[j] -= c[j] * d[j + 1];
    }
    d
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
}

/// Eigenpair refined by inverse iteration from a bisection bracket.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub lambda: f64,
    pub vector: Vec<f64>,
    /// `‖Tv - λv‖ / ‖v‖`.
    pub residual: f64,
}

/// Inverse iteration with shift `sigma`, finishing with the Rayleigh quotient.
pub fn inverse_iteration(t: &Tridiagonal, sigma: f64, iterations: usize) -> Eigenpair {
    let n = t.len();
    let mut v: Vec<f64> = (0..n).map(|j| 1.0 + 1e-3 * (j % 7) as f64).collect();
    normalize(&mut v);
    for _ in 0..iterations.max(1) {
        v = shifted_solve(t, sigma, &v);
        normalize(&mut v);
    }
    let tv = t.apply(&v);
    let lambda: f64 = tv.iter().zip(&v).map(|(a, b)| a * b).sum();
    let residual = tv.iter().zip(&v).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt();
    Eigenpair { lambda, vector: v, residual }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenResult {
    #[serde(serialize_with = "ser_model")]
    pub model: RadialModel,
    #[serde(rename = "R")]
    pub radius: f64,
    #[serde(rename = "N")]
    pub grid: usize,
    pub lambda_min: f64,
    pub scaled_lambda: f64,
    pub residual: f64,
    pub extrapolated: Option<f64>,
    #[serde(skip_serializing_if = "is_zero")]
    pub pivot_nudges: usize,
}

fn is_zero(v: &usize) -> bool {
    *v == 0
}

fn ser_model<S: serde::Serializer>(m: &RadialModel, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&m.label())
}

/// Smallest Dirichlet eigenvalue of the geodesic ball of radius `R`.
pub fn lambda0_estimate(model: &RadialModel, radius: f64, grid: usize) -> Result<EigenResult> {
    let t = assemble_tridiagonal(model, radius, grid)?;
    let b = smallest_eigenvalue(&t, DEFAULT_TOL)?;
    let pair = inverse_iteration(&t, b.lo, 3);
    Ok(EigenResult {
        model: *model,
        radius,
        grid,
        lambda_min: pair.lambda,
        scaled_lambda: model.scale(pair.lambda),
        residual: pair.residual,
        extrapolated: None,
        pivot_nudges: b.pivot_nudges,
    })
}

/// Least-squares fit of `λ = a + b/R²`, returning `a`.
pub fn richardson_extrapolate(samples: &[(f64, f64)]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::usage("extrapolation needs at least two samples"));
    }
    let xs: Vec<f64> = samples.iter().map(|(r, _)| 1.0 / (r * r)).collect();
    let n = samples.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = samples.iter().map(|(_, l)| l).sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::usage("extrapolation needs distinct radii"));
    }
    let sxy: f64 = xs.iter().zip(samples).map(|(x, (_, l))| (x - mx) * (l - my)).sum();
    Ok(my - sxy / sxx * mx)
}

/// Runs `lambda0_estimate` at each radius with a fixed step `h`
/// (`N = round(R/h)`), fills in the extrapolated scaled value on every record.
pub fn radius_sweep(model: &RadialModel, radii: &[f64], step: f64) -> Result<Vec<EigenResult>> {
    if !(step > 0.0) {
        return Err(Error::usage(format!("grid step must be positive, got {step}")));
    }
    let mut out = radii
        .iter()
        .map(|&r| lambda0_estimate(model, r, (r / step).round() as usize))
        .collect::<Result<Vec<_>>>()?;
    if out.len() >= 2 {
        let samples: Vec<(f64, f64)> = out.iter().map(|e| (e.radius, e.scaled_lambda)).collect();
        let a = richardson_extrapolate(&samples)?;
        out.iter_mut().for_each(|e| e.extrapolated = Some(a));
    }
    Ok(out)
}

/// Observed convergence order from eigenvalues at `N`, `2N`, `4N`.
pub fn observed_order(l1: f64, l2: f64, l4: f64) -> f64 {
    ((l1 - l2) / (l2 - l4)).abs().log2()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessReport {
    pub n: usize,
    /// `n²/2`, the function bound with `‖η‖² = 1/2`.
    pub bound: f64,
    pub numeric: f64,
    pub ratio: f64,
    pub pass: bool,
    pub samples: Vec<EigenResult>,
}

/// Relative tolerance on `numeric / bound`.
pub const SHARPNESS_TOL: f64 = 0.01;

/// Compares the extrapolated `λ₀` of the complex ball (in `Ric = -(n+1)`
/// normalization) with `n²/2`.
pub fn sharpness_report(n: usize, radii: &[f64], step: f64) -> Result<SharpnessReport> {
    let model = RadialModel::complex(n)?;
    let samples = radius_sweep(&model, radii, step)?;
    let numeric = samples
        .first()
        .and_then(|s| s.extrapolated)
        .ok_or_else(|| Error::usage("sharpness needs at least two radii"))?;
    let bound = (n * n) as f64 / 2.0;
    let ratio = numeric / bound;
    Ok(SharpnessReport { n, bound, numeric, ratio, pass: (ratio - 1.0).abs() <= SHARPNESS_TOL, samples })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_and_weights() {
        let m = RadialModel::real(2, 1.0).unwrap();
        let t = assemble_tridiagonal(&m, 5.0, 16).unwrap();
        assert_eq!(t.len(), 16);
        assert_eq!(t.off.len(), 15);
        assert!(t.diag.iter().all(|&d| d > 0.0));
        assert!((m.weight(1.0) - 1.1752011936).abs() < 1e-10);
        assert_eq!(m.weight(0.0), 0.0);
        let c = RadialModel::complex(2).unwrap();
        assert!((c.weight(0.7) - 0.7f64.sinh().powi(3) * 0.7f64.cosh()).abs() < 1e-12);
        assert!((c.log_weight(80.0) - (3.0 * 80.0f64.sinh().ln() + 80.0f64.cosh().ln())).abs() < 1e-9);
    }

    #[test]
    fn axis_row_has_no_inward_flux() {
        // first row: diagonal is exactly the outward coupling, no axis term
        let m = RadialModel::real(3, 1.0).unwrap();
        let (r, n) = (4.0, 32);
        let t = assemble_tridiagonal(&m, r, n).unwrap();
        let h = r / n as f64;
        let expected = m.weight(h) / m.weight(h / 2.0) / (h * h);
        assert!((t.diag[0] - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn rejects_bad_inputs() {
        let m = RadialModel::real(2, 1.0).unwrap();
        assert!(assemble_tridiagonal(&m, 0.0, 100).is_err());
        assert!(assemble_tridiagonal(&m, 1.0, 8).is_err());
        assert!(RadialModel::real(1, 1.0).is_err());
        assert!(RadialModel::real(2, 0.0).is_err());
        assert!(RadialModel::complex(0).is_err());
        assert!(richardson_extrapolate(&[(1.0, 2.0)]).is_err());
        assert!(richardson_extrapolate(&[(1.0, 2.0), (1.0, 3.0)]).is_err());
    }

    #[test]
    fn two_by_two() {
        let t = Tridiagonal::new(vec![2.0, 2.0], vec![-1.0]).unwrap();
        let b = smallest_eigenvalue(&t, 1e-12).unwrap();
        assert!((b.value - 1.0).abs() <= 1e-12);
        let id = Tridiagonal::new(vec![1.0; 5], vec![0.0; 4]).unwrap();
        assert!((smallest_eigenvalue(&id, 1e-12).unwrap().value - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn dirichlet_laplacian_on_interval() {
        // -u'' on [0, π] with N interior points: λ₁ = (2/h²)(1 - cos h), h = π/(N+1)
        let n = 1000;
        let h = std::f64::consts::PI / (n + 1) as f64;
        let t = Tridiagonal::new(vec![2.0 / (h * h); n], vec![-1.0 / (h * h); n - 1]).unwrap();
        let b = smallest_eigenvalue(&t, 1e-12).unwrap();
        let exact = 2.0 / (h * h) * (1.0 - h.cos());
        assert!((b.value - exact).abs() < 1e-8);
        assert!((b.value - 1.0).abs() < 1e-5);
        let pair = inverse_iteration(&t, b.lo, 3);
        assert!((pair.lambda - exact).abs() < 1e-10);
        assert!(pair.residual < 1e-8);
    }

    #[test]
    fn extrapolation_is_exact_on_model_data() {
        let data: Vec<(f64, f64)> = [25.0, 50.0, 100.0].iter().map(|&r| (r, 0.25 + 3.7 / (r * r))).collect();
        assert!((richardson_extrapolate(&data).unwrap() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn disc_eigenvalue_decreases_and_stays_above_bottom() {
        let m = RadialModel::real(2, 1.0).unwrap();
        let l: Vec<f64> = [5.0, 10.0, 20.0].iter().map(|&r| lambda0_estimate(&m, r, (r * 40.0) as usize).unwrap().lambda_min).collect();
        assert!(l[0] > l[1] && l[1] > l[2] && l[2] > 0.25);
        // Liouville estimate λ ≈ 1/4 + π²/R²
        assert!((l[2] - (0.25 + std::f64::consts::PI.powi(2) / 400.0)).abs() < 5e-3);
    }

    #[test]
    fn curvature_scaling_is_exact() {
        let a = lambda0_estimate(&RadialModel::real(2, 1.0).unwrap(), 10.0, 400).unwrap();
        let b = lambda0_estimate(&RadialModel::real(2, 4.0).unwrap(), 10.0, 400).unwrap();
        assert_eq!(b.lambda_min, a.lambda_min);
        assert_eq!(b.scaled_lambda, 4.0 * a.scaled_lambda);
    }

    #[test]
    fn json_record_fields() {
        let r = lambda0_estimate(&RadialModel::complex(1).unwrap(), 5.0, 64).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        for key in ["model", "R", "N", "lambda_min", "scaled_lambda", "residual", "extrapolated"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["model"], "ch(n=1)");
    }
}
