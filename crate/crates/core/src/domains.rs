//! Bounded symmetric domains: integer invariants of the irreducible factors,
//! the Kähler-hyperbolicity length of products, and the resulting λ₀ and
//! ‖η‖² bounds for the Bergman metric.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::bounds::{self, format_decimal, format_rational, ser_rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => Family::I,
            "II" | "2" => Family::II,
            "III" | "3" => Family::III,
            "IV" | "4" => Family::IV,
            "V" | "5" => Family::V,
            "VI" | "6" => Family::VI,
            other => return Err(Error::parse(format!("unknown domain family {other:?}"))),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::I => "I",
            Family::II => "II",
            Family::III => "III",
            Family::IV => "IV",
            Family::V => "V",
            Family::VI => "VI",
        };
        f.write_str(s)
    }
}

/// An irreducible bounded symmetric domain. Parameters are validated on
/// construction: `I(p,q)` needs `1 ≤ p ≤ q`, `II(m)` needs `m ≥ 2`,
/// `III(m)` needs `m ≥ 1`, `IV(m)` needs `m ≥ 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainFactor {
    I { p: usize, q: usize },
    II { m: usize },
    III { m: usize },
    IV { m: usize },
    V,
    VI,
}

/// `(n, genus, rank)` of an irreducible factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub n: usize,
    pub genus: usize,
    pub rank: usize,
}

impl DomainFactor {
    pub fn type_i(p: usize, q: usize) -> Result<Self> {
        if p == 0 || p > q {
            return Err(Error::usage(format!("type I needs 1 <= p <= q, got ({p},{q})")));
        }
        Ok(DomainFactor::I { p, q })
    }

    pub fn type_ii(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::usage(format!("type II needs m >= 2, got {m}")));
        }
        Ok(DomainFactor::II { m })
    }

    pub fn type_iii(m: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::usage("type III needs m >= 1"));
        }
        Ok(DomainFactor::III { m })
    }

    pub fn type_iv(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::usage(format!("type IV needs m >= 3, got {m}")));
        }
        Ok(DomainFactor::IV { m })
    }

    /// Builds a factor from a family and whichever parameters it takes.
    pub fn new(family: Family, p: Option<usize>, q: Option<usize>, m: Option<usize>) -> Result<Self> {
        let need_m = |m: Option<usize>| m.ok_or_else(|| Error::usage(format!("type {family} needs --m")));
        match family {
            Family::I => match (p, q) {
                (Some(p), Some(q)) => Self::type_i(p, q),
                _ => Err(Error::usage("type I needs --p and --q")),
            },
            Family::II => Self::type_ii(need_m(m)?),
            Family::III => Self::type_iii(need_m(m)?),
            Family::IV => Self::type_iv(need_m(m)?),
            Family::V => Ok(DomainFactor::V),
            Family::VI => Ok(DomainFactor::VI),
        }
    }

    /// The unit disc, `I(1,1)`.
    pub fn disc() -> Self {
        DomainFactor::I { p: 1, q: 1 }
    }

    /// The unit ball in ℂⁿ, `I(1,n)`.
    pub fn ball(n: usize) -> Result<Self> {
        Self::type_i(1, n)
    }

    pub fn family(&self) -> Family {
        match self {
            DomainFactor::I { .. } => Family::I,
            DomainFactor::II { .. } => Family::II,
            DomainFactor::III { .. } => Family::III,
            DomainFactor::IV { .. } => Family::IV,
            DomainFactor::V => Family::V,
            DomainFactor::VI => Family::VI,
        }
    }

    /// Parameter string as shown in tables: `"2,3"`, `"5"`, or empty.
    pub fn params(&self) -> String {
        match self {
            DomainFactor::I { p, q } => format!("{p},{q}"),
            DomainFactor::II { m } | DomainFactor::III { m } | DomainFactor::IV { m } => m.to_string(),
            DomainFactor::V | DomainFactor::VI => String::new(),
        }
    }

    pub fn invariants(&self) -> Invariants {
        let (n, genus, rank) = match *self {
            DomainFactor::I { p, q } => (p * q, p + q, p),
            DomainFactor::II { m } => (m * (m - 1) / 2, 2 * (m - 1), m / 2),
            DomainFactor::III { m } => (m * (m + 1) / 2, m + 1, m),
            DomainFactor::IV { m } => (m, m, 2),
            DomainFactor::V => (16, 12, 2),
            DomainFactor::VI => (27, 18, 3),
        };
        Invariants { n, genus, rank }
    }
}

pub fn factor_invariants(f: &DomainFactor) -> Invariants {
    f.invariants()
}

impl fmt::Display for DomainFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainFactor::V | DomainFactor::VI => write!(f, "{}", self.family()),
            _ => write!(f, "{}({})", self.family(), self.params()),
        }
    }
}

impl FromStr for DomainFactor {
    type Err = Error;

    /// Parses `I(2,3)`, `II(4)`, `IV(5)`, `V`, `VI`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = match s.find('(') {
            Some(open) => {
                let close = s
                    .strip_suffix(')')
                    .ok_or_else(|| Error::parse(format!("missing ')' in {s:?}")))?;
                (&s[..open], Some(&close[open + 1..]))
            }
            None => (s, None),
        };
        let family: Family = name.parse()?;
        let nums: Vec<usize> = match args {
            None => Vec::new(),
            Some(a) => a
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| Error::parse(format!("bad parameter {t:?} in {s:?}"))))
                .collect::<Result<_>>()?,
        };
        match (family, nums.as_slice()) {
            (Family::I, [p, q]) => Self::type_i(*p, *q),
            (Family::II, [m]) => Self::type_ii(*m),
            (Family::III, [m]) => Self::type_iii(*m),
            (Family::IV, [m]) => Self::type_iv(*m),
            (Family::V, []) => Ok(DomainFactor::V),
            (Family::VI, []) => Ok(DomainFactor::VI),
            _ => Err(Error::parse(format!("wrong number of parameters in {s:?}"))),
        }
    }
}

impl Serialize for DomainFactor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A product of irreducible factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DomainSpec {
    pub factors: Vec<DomainFactor>,
}

impl DomainSpec {
    pub fn new(factors: Vec<DomainFactor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::usage("a domain needs at least one factor"));
        }
        Ok(DomainSpec { factors })
    }

    pub fn irreducible(f: DomainFactor) -> Self {
        DomainSpec { factors: vec![f] }
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.invariants().n).sum()
    }

    pub fn family_label(&self) -> String {
        let fams: Vec<String> = self.factors.iter().map(|f| f.family().to_string()).collect();
        fams.join("*")
    }

    pub fn params_label(&self) -> String {
        if self.factors.len() == 1 {
            self.factors[0].params()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join("*"))
    }
}

impl FromStr for DomainSpec {
    type Err = Error;

    /// Factors separated by `*`, `x` or `×`, e.g. `I(2,3)*IV(5)*V`.
    fn from_str(s: &str) -> Result<Self> {
        let factors = s
            .split(['*', '×'])
            .flat_map(|chunk| split_on_x(chunk))
            .map(|t| t.parse())
            .collect::<Result<Vec<DomainFactor>>>()?;
        DomainSpec::new(factors)
    }
}

/// Splits on a lowercase `x` outside parentheses.
fn split_on_x(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn check_ricci(ricci: &BigRational) -> Result<()> {
    if !ricci.is_positive() {
        return Err(Error::usage(format!("Einstein constant must be positive, got {ricci}")));
    }
    Ok(())
}

/// `L² = Σ rank · genus` over the factors.
pub fn kh_length_sq(spec: &DomainSpec) -> BigRational {
    int(spec.factors.iter().map(|f| {
        let i = f.invariants();
        i.rank * i.genus
    }).sum())
}

/// `K = 2 K̄ / L²`: holomorphic sectional curvature is at most `-K` when
/// `Ric = -K̄ ω`.
pub fn hsc_upper_bound(spec: &DomainSpec, ricci: &BigRational) -> Result<BigRational> {
    check_ricci(ricci)?;
    Ok(ricci * BigInt::from(2) / kh_length_sq(spec))
}

/// `λ₀ ≥ (n²/4) K`.
pub fn lambda0_bound(spec: &DomainSpec, ricci: &BigRational) -> Result<BigRational> {
    let n = spec.dim();
    Ok(hsc_upper_bound(spec, ricci)? * int(n * n) / BigInt::from(4))
}

/// `‖η‖² ≥ L²/2` for every primitive `η` of the Bergman Kähler form.
pub fn eta_min_sq(spec: &DomainSpec) -> BigRational {
    kh_length_sq(spec) / BigInt::from(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeBoundKind {
    /// `c_k · 2K̄/L²`.
    Degree,
    /// Middle degree; valid on the orthogonal complement of L²-harmonic n-forms.
    MiddleComplement,
    /// The sharper function bound `n²/(4 η²)` (degree 0 only).
    Function,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeBound {
    pub k: usize,
    pub kind: DegreeBoundKind,
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
}

/// Spectral bounds for every degree `0..=2n`, plus the function bound in degree 0.
pub fn degree_k_bounds(spec: &DomainSpec, ricci: &BigRational) -> Result<Vec<DegreeBound>> {
    let n = spec.dim();
    let scale = hsc_upper_bound(spec, ricci)?;
    let mut out = Vec::with_capacity(2 * n + 2);
    for k in 0..=2 * n {
        let (kind, c) = if k == n {
            (DegreeBoundKind::MiddleComplement, bounds::middle_k_bound(n)?)
        } else {
            (DegreeBoundKind::Degree, bounds::c_k(n, k)?)
        };
        out.push(DegreeBound { k, kind, value: c * &scale });
        if k == 0 {
            let eta_sq = BigRational::from_integer(BigInt::from(1)) / &scale;
            out.push(DegreeBound { k, kind: DegreeBoundKind::Function, value: bounds::function_bound(n, &eta_sq)? });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub spec: DomainSpec,
    pub family: String,
    pub params: String,
    pub n: usize,
    /// Genus and rank; `None` for reducible products.
    pub genus: Option<usize>,
    pub rank: Option<usize>,
    #[serde(serialize_with = "ser_rational")]
    pub ricci: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub kh_length_sq: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub hsc_bound: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub lambda0_bound: BigRational,
    pub lambda0_decimal: String,
    #[serde(serialize_with = "ser_rational")]
    pub eta_min_sq: BigRational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_degree: Option<Vec<DegreeBound>>,
}

impl BoundReport {
    pub fn new(spec: DomainSpec, ricci: &BigRational, with_degrees: bool) -> Result<Self> {
        let lambda0 = lambda0_bound(&spec, ricci)?;
        let (genus, rank) = match spec.factors.as_slice() {
            [f] => (Some(f.invariants().genus), Some(f.invariants().rank)),
            _ => (None, None),
        };
        let per_degree = if with_degrees { Some(degree_k_bounds(&spec, ricci)?) } else { None };
        Ok(BoundReport {
            family: spec.family_label(),
            params: spec.params_label(),
            n: spec.dim(),
            genus,
            rank,
            ricci: ricci.clone(),
            kh_length_sq: kh_length_sq(&spec),
            hsc_bound: hsc_upper_bound(&spec, ricci)?,
            lambda0_decimal: format_decimal(&lambda0),
            lambda0_bound: lambda0,
            eta_min_sq: eta_min_sq(&spec),
            per_degree,
            spec,
        })
    }

    /// Row for the CSV/Markdown schema.
    pub fn row(&self) -> Vec<String> {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        vec![
            self.family.clone(),
            self.params.clone(),
            self.n.to_string(),
            opt(self.genus),
            opt(self.rank),
            format_rational(&self.kh_length_sq),
            format_rational(&self.hsc_bound),
            format_rational(&self.lambda0_bound),
            self.lambda0_decimal.clone(),
            format_rational(&self.eta_min_sq),
        ]
    }

    pub const HEADER: [&'static str; 10] =
        ["family", "params", "n", "genus", "rank", "L2", "K", "lambda0_bound", "lambda0_decimal", "eta_min_sq"];
}

/// Inclusive upper parameter limits for [`classical_table`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRanges {
    /// Type I rows for `1 ≤ p ≤ q ≤ i_max`.
    pub i_max: usize,
    pub ii_max: usize,
    pub iii_max: usize,
    pub iv_max: usize,
    pub exceptional: bool,
}

impl Default for TableRanges {
    fn default() -> Self {
        TableRanges { i_max: 4, ii_max: 6, iii_max: 5, iv_max: 6, exceptional: true }
    }
}

pub fn classical_table(ranges: &TableRanges, ricci: &BigRational) -> Result<Vec<BoundReport>> {
    let mut factors = Vec::new();
    for q in 1..=ranges.i_max {
        for p in 1..=q {
            factors.push(DomainFactor::type_i(p, q)?);
        }
    }
    for m in 2..=ranges.ii_max {
        factors.push(DomainFactor::type_ii(m)?);
    }
    for m in 1..=ranges.iii_max {
        factors.push(DomainFactor::type_iii(m)?);
    }
    for m in 3..=ranges.iv_max {
        factors.push(DomainFactor::type_iv(m)?);
    }
    if ranges.exceptional {
        factors.extend([DomainFactor::V, DomainFactor::VI]);
    }
    factors.into_iter().map(|f| BoundReport::new(DomainSpec::irreducible(f), ricci, false)).collect()
}
