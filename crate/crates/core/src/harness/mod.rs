//! Randomized exact verification suites and their reports.
//!
//! Every suite compares exact rationals; a failure records the rendered
//! inputs and both sides. Reports are deterministic in
//! `(suite, n, trials, seed)` apart from `elapsed_ms`.

mod random;
mod suites;

#[cfg(test)]
mod props;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

pub use random::{
    random_coefficient, random_degree_form_with, random_form, random_form_with, random_primitive,
    random_primitive_with, simple_random_form, simple_random_form_with, RandomSpec,
};
pub use suites::{
    check_bidegree_bounds, check_decomposition_norms, check_hodge_riemann, check_lefschetz_structure,
    check_primitive_norms, check_sl2, check_star, check_wedge_norm, wedge_degree_pairs,
};

use crate::error::{Error, Result};
use crate::kaehler::KahlerModel;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub identity: String,
    pub trial: u64,
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub failures: Vec<Failure>,
    pub pass: bool,
    /// Number of individual identity evaluations.
    pub checks: u64,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    /// JSON without the timing field, for byte-level comparisons.
    pub fn to_json_deterministic(&self) -> String {
        let mut v = serde_json::to_value(self).expect("serializable");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("elapsed_ms");
        }
        serde_json::to_string(&v).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} n={} trials={} seed={}: {} ({} checks, {} failures, {} ms)\n",
            self.suite,
            self.n,
            self.trials,
            self.seed,
            if self.pass { "PASS" } else { "FAIL" },
            self.checks,
            self.failures.len(),
            self.elapsed_ms
        );
        for f in &self.failures {
            out.push_str(&format!(
                "  [{}] trial {}: inputs {} | lhs {} | rhs {}\n",
                f.identity, f.trial, f.inputs, f.lhs, f.rhs
            ));
        }
        out
    }
}

/// Accumulates checks and failures while a suite runs.
#[derive(Debug, Default)]
pub(crate) struct Recorder {
    failures: Vec<Failure>,
    checks: u64,
}

impl Recorder {
    pub(crate) fn check<T: PartialEq + fmt::Display>(
        &mut self,
        identity: &str,
        trial: u64,
        inputs: impl FnOnce() -> String,
        lhs: &T,
        rhs: &T,
    ) {
        self.relation(identity, trial, inputs, lhs, rhs, lhs == rhs);
    }

    pub(crate) fn relation<T: fmt::Display>(
        &mut self,
        identity: &str,
        trial: u64,
        inputs: impl FnOnce() -> String,
        lhs: &T,
        rhs: &T,
        holds: bool,
    ) {
        self.checks += 1;
        if !holds {
            self.failures.push(Failure {
                identity: identity.to_string(),
                trial,
                inputs: inputs(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }

    pub(crate) fn finish(mut self, suite: &str, n: usize, trials: u64, seed: u64, start: Instant) -> SuiteReport {
        self.failures.sort_by(|a, b| (a.trial, &a.identity).cmp(&(b.trial, &b.identity)));
        SuiteReport {
            suite: suite.to_string(),
            n,
            trials,
            seed,
            pass: self.failures.is_empty(),
            failures: self.failures,
            checks: self.checks,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }
}

/// The verification suites, named on the command line as in [`Suite::name`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// `⟨L^j φ, L^j ψ⟩ = j!(n-k)!/(n-k-j)! ⟨φ, ψ⟩` on primitive forms.
    PrimitiveNorms,
    /// Norms of `φ`, `L^{n-k} φ`, `L^{n-k-1} φ` through the primitive decomposition.
    DecompositionNorms,
    /// Two-sided bounds on `|L^{n-k} φ|²`, `|L^{n-k-1} φ|²` for `(p,q)`-forms.
    BidegreeBounds,
    /// `|φ ∧ ψ|² ≤ C(a+b, a) |φ|² |ψ|²`, and `≤ |φ|² |ψ|²` for simple factors.
    WedgeNorm,
    /// Ranks, kernels and the Lefschetz decomposition.
    Lefschetz,
    /// The Hodge star: its formula on `L^r` of primitives, `** = (-1)^k`,
    /// the defining relation and `Λ = *⁻¹ L *`.
    Star,
    HodgeRiemann,
    /// `[L, Λ] = (k-n) Id` and adjointness of `L` and `Λ`.
    Sl2,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::PrimitiveNorms,
        Suite::DecompositionNorms,
        Suite::BidegreeBounds,
        Suite::WedgeNorm,
        Suite::Lefschetz,
        Suite::Star,
        Suite::HodgeRiemann,
        Suite::Sl2,
    ];

    /// Suites whose identities are exact equalities.
    pub const IDENTITIES: [Suite; 6] =
        [Suite::PrimitiveNorms, Suite::DecompositionNorms, Suite::Lefschetz, Suite::Star, Suite::HodgeRiemann, Suite::Sl2];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PrimitiveNorms => "prop31",
            Suite::DecompositionNorms => "lemma32",
            Suite::BidegreeBounds => "prop33",
            Suite::WedgeNorm => "federer",
            Suite::Lefschetz => "lefschetz",
            Suite::Star => "star",
            Suite::HodgeRiemann => "hodge-riemann",
            Suite::Sl2 => "sl2",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::usage(format!("unknown suite {s:?}")))
    }
}

/// Runs one suite over every degree (or bidegree) it applies to in dimension
/// `model.n()`, with `trials` random draws per degree.
pub fn run_suite(suite: Suite, model: &KahlerModel, trials: u64, spec: &RandomSpec) -> SuiteReport {
    match suite {
        Suite::PrimitiveNorms => suites::primitive_norms_suite(model, trials, spec),
        Suite::DecompositionNorms => suites::decomposition_norms_suite(model, trials, spec),
        Suite::BidegreeBounds => suites::bidegree_bounds_suite(model, trials, spec),
        Suite::WedgeNorm => check_wedge_norm(model, &wedge_degree_pairs(model.n()), trials, spec),
        Suite::Lefschetz => check_lefschetz_structure(model, trials, spec),
        Suite::Star => check_star(model, trials, spec),
        Suite::HodgeRiemann => check_hodge_riemann(model, trials, spec),
        Suite::Sl2 => check_sl2(model, trials, spec),
    }
}

pub fn run_suites(suites: &[Suite], model: &KahlerModel, trials: u64, spec: &RandomSpec) -> Vec<SuiteReport> {
    suites.iter().map(|s| run_suite(*s, model, trials, spec)).collect()
}
