use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::exterior::{Form, GaussRational, Monomial, MAX_DIM};

/// Grading label of an operator's domain or codomain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grade {
    Degree(usize),
    Bidegree(usize, usize),
}

/// An operator between two graded pieces, materialized in the monomial basis.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    pub domain: Grade,
    pub codomain: Grade,
    pub matrix: Matrix,
    // nonzero entries of each column, for sparse application
    columns: Vec<Vec<(usize, GaussRational)>>,
}

impl OperatorMatrix {
    pub fn new(domain: Grade, codomain: Grade, matrix: Matrix) -> Self {
        let columns = (0..matrix.cols())
            .map(|j| {
                (0..matrix.rows())
                    .filter_map(|i| {
                        let v = matrix.get(i, j);
                        (!v.is_zero()).then(|| (i, v.clone()))
                    })
                    .collect()
            })
            .collect();
        OperatorMatrix { domain, codomain, matrix, columns }
    }

    pub fn column_nonzeros(&self, j: usize) -> &[(usize, GaussRational)] {
        &self.columns[j]
    }
}

/// Deliberate convention defect used to check that the verification suites
/// are sensitive: the Hodge star of one basis monomial gets the wrong sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarFault {
    pub monomial: Monomial,
}

/// Linear solve data for the primitive decomposition in one degree.
#[derive(Debug)]
pub(crate) struct Decomposer {
    /// `(r, index into primitive_basis(k - 2r))` for each unknown.
    layout: Vec<(usize, usize)>,
    inverse: Matrix,
}

/// The Kähler operator package at one point of a Kähler manifold of complex
/// dimension `n`, with lazily materialized and cached operator matrices.
///
/// Caches are `OnceLock`s, so concurrent first access builds each matrix at
/// most once and every reader sees the same value.
#[derive(Debug)]
pub struct KahlerModel {
    n: usize,
    bases: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    star_fault: Option<StarFault>,
    lefschetz: Vec<OnceLock<OperatorMatrix>>,
    dual: Vec<OnceLock<OperatorMatrix>>,
    star: Vec<OnceLock<OperatorMatrix>>,
    primitive: Vec<OnceLock<Vec<Form>>>,
    projector: Vec<OnceLock<Matrix>>,
    decomposer: Vec<OnceLock<Decomposer>>,
}

fn slots<T>(n: usize) -> Vec<OnceLock<T>> {
    (0..=2 * n).map(|_| OnceLock::new()).collect()
}

static SHARED: OnceLock<Mutex<HashMap<usize, Arc<KahlerModel>>>> = OnceLock::new();

impl KahlerModel {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::usage(format!("dimension must be in 1..={MAX_DIM}, got {n}")));
        }
        let bases: Vec<Vec<Monomial>> = (0..=2 * n).map(|k| Monomial::of_degree(n, k)).collect();
        let index = bases.iter().map(|b| b.iter().enumerate().map(|(i, m)| (*m, i)).collect()).collect();
        Ok(KahlerModel {
            n,
            bases,
            index,
            star_fault: None,
            lefschetz: slots(n),
            dual: slots(n),
            star: slots(n),
            primitive: slots(n),
            projector: slots(n),
            decomposer: slots(n),
        })
    }

    /// A model whose Hodge star is wrong by a sign on one monomial.
    pub fn with_star_fault(n: usize, fault: StarFault) -> Result<Self> {
        let mut m = Self::new(n)?;
        if fault.monomial.max_index() > n {
            return Err(Error::usage(format!("fault monomial {} outside dimension {n}", fault.monomial)));
        }
        m.star_fault = Some(fault);
        Ok(m)
    }

    /// Process-wide shared instance for dimension `n`.
    pub fn shared(n: usize) -> Result<Arc<KahlerModel>> {
        let registry = SHARED.get_or_init(|| Mutex::new(HashMap::new()));
        let mut map = registry.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(m) = map.get(&n) {
            return Ok(Arc::clone(m));
        }
        let m = Arc::new(KahlerModel::new(n)?);
        map.insert(n, Arc::clone(&m));
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_faulted(&self) -> bool {
        self.star_fault.is_some()
    }

    /// Monomial basis of degree-`k` forms, in canonical order.
    pub fn basis(&self, k: usize) -> &[Monomial] {
        self.bases.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dim(&self, k: usize) -> usize {
        self.basis(k).len()
    }

    fn check_form(&self, a: &Form) -> Result<()> {
        if a.n() != self.n {
            return Err(Error::DimensionMismatch(a.n(), self.n));
        }
        Ok(())
    }

    /// Coefficient vector of the degree-`k` part of `a`.
    pub fn to_vector(&self, a: &Form, k: usize) -> Vec<GaussRational> {
        let mut v = vec![GaussRational::zero(); self.dim(k)];
        for (m, c) in a.terms() {
            if m.degree() == k {
                v[self.index[k][m]] = c.clone();
            }
        }
        v
    }

    pub fn from_vector(&self, k: usize, v: &[GaussRational]) -> Form {
        Form::from_terms(self.n, self.basis(k).iter().copied().zip(v.iter().cloned()))
    }

    pub fn kahler_form(&self) -> Form {
        Form::from_terms(
            self.n,
            (1..=self.n).map(|a| (Monomial::from_indices(&[a], &[a]).unwrap(), GaussRational::i())),
        )
    }

    /// `dV = ωⁿ/n! = iⁿ (-1)^{n(n-1)/2} dz^{1..n} ∧ dz̄^{1..n}`.
    pub fn volume_form(&self) -> Form {
        Form::monomial(self.n, self.volume_coefficient(), self.top_monomial())
    }

    fn top_monomial(&self) -> Monomial {
        self.basis(2 * self.n)[0]
    }

    pub(crate) fn volume_coefficient(&self) -> GaussRational {
        let n = self.n as i64;
        let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
        GaussRational::i_pow(n).scale(&num_rational::BigRational::from_integer(sign.into()))
    }

    /// Coefficient of a top-degree form relative to `dV`.
    pub fn top_ratio(&self, top: &Form) -> GaussRational {
        let c = top.coeff(&self.top_monomial());
        &c / &self.volume_coefficient()
    }

    // ---- Lefschetz operator -------------------------------------------------

    /// `L: Λ^k → Λ^{k+2}`.
    pub fn lefschetz_matrix(&self, k: usize) -> &OperatorMatrix {
        self.lefschetz[k].get_or_init(|| {
            let omega = self.kahler_form();
            let target = k + 2;
            let columns: Vec<Vec<GaussRational>> = self
                .basis(k)
                .iter()
                .map(|m| {
                    let img = &omega ^ &Form::monomial(self.n, GaussRational::from_int(1), *m);
                    self.to_vector(&img, target)
                })
                .collect();
            OperatorMatrix::new(Grade::Degree(k), Grade::Degree(target), Matrix::from_columns(self.dim(target), &columns))
        })
    }

    pub fn lefschetz(&self, a: &Form) -> Result<Form> {
        self.check_form(a)?;
        self.kahler_form().wedge(a)
    }

    pub fn lefschetz_power(&self, a: &Form, j: usize) -> Result<Form> {
        self.check_form(a)?;
        let omega = self.kahler_form();
        let mut out = a.clone();
        for _ in 0..j {
            if out.is_zero() {
                break;
            }
            out = omega.wedge(&out)?;
        }
        Ok(out)
    }

    /// Matrix of `L^j` on degree `k` (not cached).
    pub fn lefschetz_power_matrix(&self, k: usize, j: usize) -> Matrix {
        let target = k + 2 * j;
        let columns: Vec<Vec<GaussRational>> = self
            .basis(k)
            .iter()
            .map(|m| {
                let f = Form::monomial(self.n, GaussRational::from_int(1), *m);
                let img = self.lefschetz_power(&f, j).expect("same dimension");
                self.to_vector(&img, target)
            })
            .collect();
        Matrix::from_columns(self.dim(target), &columns)
    }

    // ---- Hodge star ----------------------------------------------------------

    /// `*μ = c · ν` with `ν = dz^{T^c} ∧ dz̄^{S^c}`, fixed by `μ ∧ conj(*μ) = dV`.
    pub fn star_monomial(&self, mu: Monomial) -> (GaussRational, Monomial) {
        let partner = mu.star_partner(self.n);
        let (s, partner_conj) = partner.conjugate();
        let (t, top) = mu.wedge(partner_conj).expect("complementary monomials");
        debug_assert_eq!(top, self.top_monomial());
        // μ ∧ conj(c ν) = conj(c) · s · t · top = v · top  ⇒  c = conj(v) · s · t
        let mut c = self.volume_coefficient().conj();
        if s * t < 0 {
            c = -c;
        }
        if self.star_fault.map(|f| f.monomial) == Some(mu) {
            c = -c;
        }
        (c, partner)
    }

    /// `*: Λ^k → Λ^{2n-k}`.
    pub fn star_matrix(&self, k: usize) -> &OperatorMatrix {
        self.star[k].get_or_init(|| {
            let target = 2 * self.n - k;
            let mut m = Matrix::zeros(self.dim(target), self.dim(k));
            for (j, mu) in self.basis(k).iter().enumerate() {
                let (c, nu) = self.star_monomial(*mu);
                m.set(self.index[target][&nu], j, c);
            }
            OperatorMatrix::new(Grade::Degree(k), Grade::Degree(target), m)
        })
    }

    /// Hodge star, applied monomial by monomial (so degree by degree).
    pub fn hodge_star(&self, a: &Form) -> Result<Form> {
        self.check_form(a)?;
        Ok(Form::from_terms(
            self.n,
            a.terms().map(|(m, c)| {
                let (s, nu) = self.star_monomial(*m);
                (nu, c * &s)
            }),
        ))
    }

    /// Inverse of the star computed by inverting each monomial image.
    pub fn hodge_star_inverse(&self, a: &Form) -> Result<Form> {
        self.check_form(a)?;
        let mut pre: HashMap<Monomial, (GaussRational, Monomial)> = HashMap::new();
        for (m, _) in a.terms() {
            // the partner map is an involution
            let source = m.star_partner(self.n);
            let (c, img) = self.star_monomial(source);
            debug_assert_eq!(img, *m);
            pre.insert(*m, (c, source));
        }
        Ok(Form::from_terms(
            self.n,
            a.terms().map(|(m, coef)| {
                let (c, src) = &pre[m];
                (*src, coef / c)
            }),
        ))
    }

    // ---- dual Lefschetz --------------------------------------------------------

    /// `Λ: Λ^k → Λ^{k-2}` as the Hermitian adjoint of `L`. For an unfaulted
    /// model the first construction also checks `Λ = *⁻¹ L *` entry by entry.
    pub fn dual_lefschetz_matrix(&self, k: usize) -> &OperatorMatrix {
        self.dual[k].get_or_init(|| {
            let m = if k < 2 {
                Matrix::zeros(0, self.dim(k))
            } else {
                self.lefschetz_matrix(k - 2).matrix.conj_transpose()
            };
            if !self.is_faulted() && k >= 2 {
                let via_star = self.dual_lefschetz_via_star_matrix(k);
                assert!(
                    via_star == m,
                    "internal error: adjoint of L and *^-1 L * disagree in degree {k} (n = {})",
                    self.n
                );
            }
            let target = if k < 2 { Grade::Degree(0) } else { Grade::Degree(k - 2) };
            OperatorMatrix::new(Grade::Degree(k), target, m)
        })
    }

    /// `*⁻¹ ∘ L ∘ *` on degree `k`, materialized independently of the adjoint.
    pub fn dual_lefschetz_via_star_matrix(&self, k: usize) -> Matrix {
        if k < 2 {
            return Matrix::zeros(0, self.dim(k));
        }
        let target = k - 2;
        let columns: Vec<Vec<GaussRational>> = self
            .basis(k)
            .iter()
            .map(|m| {
                let f = Form::monomial(self.n, GaussRational::from_int(1), *m);
                let img = self
                    .hodge_star(&f)
                    .and_then(|s| self.lefschetz(&s))
                    .and_then(|l| self.hodge_star_inverse(&l))
                    .expect("same dimension");
                self.to_vector(&img, target)
            })
            .collect();
        Matrix::from_columns(self.dim(target), &columns)
    }

    pub fn dual_lefschetz(&self, a: &Form) -> Result<Form> {
        self.check_form(a)?;
        let mut out = Form::zero(self.n);
        let mut by_degree: BTreeMap<usize, Vec<(Monomial, GaussRational)>> = BTreeMap::new();
        for (m, c) in a.terms() {
            by_degree.entry(m.degree()).or_default().push((*m, c.clone()));
        }
        for (k, terms) in by_degree {
            if k < 2 {
                continue;
            }
            let op = self.dual_lefschetz_matrix(k);
            let mut acc = vec![GaussRational::zero(); self.dim(k - 2)];
            for (m, c) in terms {
                for (row, v) in op.column_nonzeros(self.index[k][&m]) {
                    acc[*row] += v * &c;
                }
            }
            out = &out + &self.from_vector(k - 2, &acc);
        }
        Ok(out)
    }

    /// Multiplies the `(p, q)` component by `i^{p-q}`.
    pub fn weil_operator(&self, a: &Form) -> Result<Form> {
        self.check_form(a)?;
        Ok(a.map_coefficients(|m, c| c.mul_i_pow(m.p() as i64 - m.q() as i64)))
    }

    /// `Q(a, b) = i^{k(k-1)} ω^{n-k} ∧ a ∧ b`, returned as its coefficient
    /// relative to `dV`. Both inputs must be homogeneous of the same degree `k ≤ n`.
    pub fn hr_pairing(&self, a: &Form, b: &Form) -> Result<GaussRational> {
        self.check_form(a)?;
        self.check_form(b)?;
        if a.is_zero() || b.is_zero() {
            return Ok(GaussRational::zero());
        }
        let (Some(ka), Some(kb)) = (a.homogeneous_degree(), b.homogeneous_degree()) else {
            return Err(Error::usage("Hodge–Riemann pairing needs homogeneous forms"));
        };
        if ka != kb {
            return Err(Error::usage(format!("degree mismatch in pairing: {ka} vs {kb}")));
        }
        if ka > self.n {
            return Err(Error::usage(format!("pairing degree {ka} exceeds n = {}", self.n)));
        }
        let k = ka as i64;
        let top = self.lefschetz_power(&a.wedge(b)?, self.n - ka)?;
        Ok(self.top_ratio(&top).mul_i_pow(k * (k - 1)))
    }

    pub fn is_primitive(&self, a: &Form) -> Result<bool> {
        Ok(self.dual_lefschetz(a)?.is_zero())
    }

    // ---- primitive forms -------------------------------------------------------

    /// Exact basis of `ker Λ` in degree `k` (empty for `k > n`).
    pub fn primitive_basis(&self, k: usize) -> &[Form] {
        if k > 2 * self.n {
            return &[];
        }
        self.primitive[k].get_or_init(|| {
            if k < 2 {
                return self
                    .basis(k)
                    .iter()
                    .map(|m| Form::monomial(self.n, GaussRational::from_int(1), *m))
                    .collect();
            }
            self.dual_lefschetz_matrix(k)
                .matrix
                .nullspace()
                .into_iter()
                .map(|v| self.from_vector(k, &v))
                .collect()
        })
    }

    /// Orthogonal projector onto the primitive subspace of degree `k`,
    /// `I - L (ΛL)⁻¹ Λ`.
    pub fn primitive_projector(&self, k: usize) -> &Matrix {
        self.projector[k].get_or_init(|| {
            let d = self.dim(k);
            if k < 2 {
                return Matrix::identity(d);
            }
            if k > self.n + 1 {
                return Matrix::zeros(d, d);
            }
            let l = &self.lefschetz_matrix(k - 2).matrix;
            let lam = &self.dual_lefschetz_matrix(k).matrix;
            let gram = lam.mul(l);
            let gram_inv = gram.inverse().expect("ΛL is positive definite below the middle degree");
            Matrix::identity(d).sub(&l.mul(&gram_inv).mul(lam))
        })
    }

    pub fn project_primitive(&self, a: &Form, k: usize) -> Result<Form> {
        self.check_form(a)?;
        let v = self.primitive_projector(k).apply(&self.to_vector(a, k));
        Ok(self.from_vector(k, &v))
    }

    /// Range of `r` in the decomposition of degree-`k` forms.
    pub fn decomposition_range(&self, k: usize) -> std::ops::RangeInclusive<usize> {
        k.saturating_sub(self.n)..=k / 2
    }

    fn decomposer(&self, k: usize) -> &Decomposer {
        self.decomposer[k].get_or_init(|| {
            let mut layout = Vec::new();
            let mut columns = Vec::new();
            for r in self.decomposition_range(k) {
                for (idx, b) in self.primitive_basis(k - 2 * r).iter().enumerate() {
                    let img = self.lefschetz_power(b, r).expect("same dimension");
                    columns.push(self.to_vector(&img, k));
                    layout.push((r, idx));
                }
            }
            let m = Matrix::from_columns(self.dim(k), &columns);
            let inverse = m.inverse().unwrap_or_else(|| {
                panic!("internal error: Lefschetz decomposition system is singular (n = {}, k = {k})", self.n)
            });
            Decomposer { layout, inverse }
        })
    }

    /// Exact primitive decomposition `a = Σ_r L^r a_r` of a degree-`k` form.
    pub fn primitive_decompose(&self, a: &Form, k: usize) -> Result<PrimitiveDecomposition> {
        self.check_form(a)?;
        if k > 2 * self.n {
            return Err(Error::usage(format!("degree {k} exceeds 2n = {}", 2 * self.n)));
        }
        if !a.is_homogeneous_of(k) {
            return Err(Error::usage(format!("form is not homogeneous of degree {k}")));
        }
        let dec = self.decomposer(k);
        let x = dec.inverse.apply(&self.to_vector(a, k));
        let mut parts: BTreeMap<usize, Form> = BTreeMap::new();
        for ((r, idx), coef) in dec.layout.iter().zip(x) {
            if coef.is_zero() {
                continue;
            }
            let basis = &self.primitive_basis(k - 2 * r)[*idx];
            let entry = parts.entry(*r).or_insert_with(|| Form::zero(self.n));
            *entry = &*entry + &basis.scale(&coef);
        }
        parts.retain(|_, f| !f.is_zero());
        Ok(PrimitiveDecomposition { n: self.n, k, parts })
    }

    pub fn recompose(&self, d: &PrimitiveDecomposition) -> Result<Form> {
        if d.n != self.n {
            return Err(Error::DimensionMismatch(d.n, self.n));
        }
        let mut out = Form::zero(self.n);
        for (r, part) in &d.parts {
            if part.is_zero() {
                continue;
            }
            if 2 * r > d.k || !part.is_homogeneous_of(d.k - 2 * r) {
                return Err(Error::usage(format!("part r = {r} is not of degree {}", d.k as i64 - 2 * *r as i64)));
            }
            if !self.is_primitive(part)? {
                return Err(Error::usage(format!("part r = {r} is not primitive")));
            }
            out = &out + &self.lefschetz_power(part, *r)?;
        }
        Ok(out)
    }
}

/// `a = Σ_r L^r parts[r]` with every part primitive of degree `k - 2r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveDecomposition {
    pub n: usize,
    pub k: usize,
    pub parts: BTreeMap<usize, Form>,
}

impl PrimitiveDecomposition {
    pub fn new(n: usize, k: usize, parts: BTreeMap<usize, Form>) -> Self {
        PrimitiveDecomposition { n, k, parts }
    }

    /// The part with index `r`, zero when absent.
    pub fn part(&self, r: usize) -> Form {
        self.parts.get(&r).cloned().unwrap_or_else(|| Form::zero(self.n))
    }
}
