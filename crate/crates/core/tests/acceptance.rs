//! Acceptance criteria 1 to 8. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails. Run with `cargo test --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use kahler_core::bounds::{c_k, ck_sandwich, verify_ck_is_min};
use kahler_core::domains::{eta_min_sq, lambda0_bound, DomainFactor, DomainSpec};
use kahler_core::exterior::Monomial;
use kahler_core::harness::{run_suite, RandomSpec, Suite, SuiteReport};
use kahler_core::kaehler::{KahlerModel, StarFault};
use kahler_core::spectral::{lambda0_estimate, observed_order, radius_sweep, sharpness_report, RadialModel};

const SEED: u64 = 42;

struct Outcome {
    pass: bool,
    detail: String,
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn summarize(reports: &[SuiteReport]) -> (bool, String) {
    let failures: usize = reports.iter().map(|r| r.failures.len()).sum();
    let checks: u64 = reports.iter().map(|r| r.checks).sum();
    let bad: Vec<String> = reports.iter().filter(|r| !r.pass).map(|r| format!("{}@n={}", r.suite, r.n)).collect();
    let mut s = format!("{} suites, {checks} checks, {failures} failures", reports.len());
    if !bad.is_empty() {
        s.push_str(&format!(" [{}]", bad.join(", ")));
    }
    (failures == 0, s)
}

fn criterion_1() -> Outcome {
    let spec = RandomSpec::new(SEED);
    let mut reports = Vec::new();
    for n in 1..=4 {
        let model = KahlerModel::shared(n).expect("model");
        for suite in Suite::IDENTITIES {
            reports.push(run_suite(suite, &model, 100, &spec));
        }
    }
    let (pass, detail) = summarize(&reports);
    Outcome { pass, detail: format!("n=1..4, 100 trials per degree: {detail}") }
}

fn criterion_2() -> Outcome {
    let spec = RandomSpec::new(SEED);
    let model = KahlerModel::shared(3).expect("model");
    let reports = vec![
        run_suite(Suite::BidegreeBounds, &model, 10_000, &spec),
        run_suite(Suite::WedgeNorm, &model, 10_000, &spec),
    ];
    let (suites_pass, detail) = summarize(&reports);
    // ω on (1,1) at n = 3: |Lω|² / |ω|² = (n-q)!²/p!² = 4
    let omega = model.kahler_form();
    let ratio = model.lefschetz(&omega).expect("same dim").norm_sq() / omega.norm_sq();
    let witness = ratio == q(4, 1);
    Outcome { pass: suites_pass && witness, detail: format!("n=3, 10^4 trials: {detail}; |Lω|²/|ω|² = {ratio}") }
}

fn criterion_3() -> Outcome {
    let fixtures = [
        (c_k(3, 1).unwrap(), q(4, 81), "c_k(3,1)=4/81"),
        (c_k(2, 0).unwrap(), q(1, 4), "c_k(2,0)=1/4"),
        (c_k(3, 5).unwrap(), c_k(3, 1).unwrap(), "c_k(3,5)=c_k(3,1)"),
    ];
    let bad_fixtures: Vec<&str> = fixtures.iter().filter(|(a, b, _)| a != b).map(|(_, _, s)| *s).collect();
    let mut failing = Vec::new();
    let mut sandwich_ok = true;
    let mut cases = 0;
    for n in 1..=6 {
        for k in (0..=2 * n).filter(|&k| k != n) {
            cases += 1;
            let r = verify_ck_is_min(n, k).unwrap();
            if !r.pass {
                failing.push(format!("({n},{k})"));
            }
            let (lo, c, hi) = ck_sandwich(n, k).unwrap();
            sandwich_ok &= lo <= c && c <= hi;
        }
    }
    let pass = bad_fixtures.is_empty() && failing.is_empty();
    let mut detail = format!("fixtures {}", if bad_fixtures.is_empty() { "ok".to_string() } else { bad_fixtures.join(",") });
    detail.push_str(&format!("; verify_ck_is_min {}/{cases} cases", cases - failing.len()));
    if !failing.is_empty() {
        detail.push_str(&format!(", fails at (n,k) = {}", failing.join(" ")));
    }
    detail.push_str(&format!("; sandwich min <= c_k <= reduced min {}", if sandwich_ok { "holds" } else { "BROKEN" }));
    Outcome { pass, detail }
}

fn criterion_4() -> Outcome {
    let one = BigRational::one();
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut check = |f: DomainFactor, lambda: BigRational, rank: i64, genus: i64| {
        let s = DomainSpec::irreducible(f);
        checked += 1;
        if lambda0_bound(&s, &one).unwrap() != lambda || eta_min_sq(&s) != q(rank * genus, 2) {
            bad.push(f.to_string());
        }
    };
    for qq in 1..=50i64 {
        for p in 1..=qq {
            check(DomainFactor::type_i(p as usize, qq as usize).unwrap(), q((p * qq) * (p * qq), 2 * p * (p + qq)), p, p + qq);
        }
    }
    for m in 2..=50i64 {
        check(DomainFactor::type_ii(m as usize).unwrap(), q(m * m * (m - 1), 16 * (m / 2)), m / 2, 2 * (m - 1));
    }
    for m in 1..=50i64 {
        check(DomainFactor::type_iii(m as usize).unwrap(), q(m * (m + 1), 8), m, m + 1);
    }
    for m in 3..=50i64 {
        check(DomainFactor::type_iv(m as usize).unwrap(), q(m, 4), 2, m);
    }
    check("V".parse().unwrap(), q(16, 3), 2, 12);
    check("VI".parse().unwrap(), q(27, 4), 3, 18);
    let iv5 = lambda0_bound(&DomainSpec::irreducible(DomainFactor::type_iv(5).unwrap()), &one).unwrap();
    let pass = bad.is_empty() && iv5 == q(5, 4);
    Outcome { pass, detail: format!("{checked} domains checked, {} mismatches; IV(5) -> {iv5}", bad.len()) }
}

fn criterion_5() -> (Outcome, Option<f64>) {
    let model = RadialModel::real(2, 1.0).unwrap();
    let samples = match radius_sweep(&model, &[25.0, 50.0, 100.0], 1e-3) {
        Ok(s) => s,
        Err(e) => return (Outcome { pass: false, detail: format!("solver error: {e}") }, None),
    };
    let lams: Vec<f64> = samples.iter().map(|s| s.scaled_lambda).collect();
    let decreasing = lams.windows(2).all(|w| w[1] < w[0]);
    let above = lams.iter().all(|&l| l > 0.25);
    let extrap = samples[0].extrapolated.unwrap_or(f64::NAN);
    let in_window = (0.249..=0.251).contains(&extrap);
    let detail = format!(
        "lambda(R=25,50,100) = {:.6}, {:.6}, {:.6}; decreasing {decreasing}, all > 1/4 {above}; extrapolated {extrap:.6} (window [0.249, 0.251])",
        lams[0], lams[1], lams[2]
    );
    (Outcome { pass: decreasing && above && in_window, detail }, Some(extrap))
}

fn criterion_6(disc: Option<f64>) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let mut ch1 = None;
    for n in 1..=3 {
        match sharpness_report(n, &[25.0, 50.0, 100.0], 1e-3) {
            Ok(r) => {
                pass &= r.pass;
                parts.push(format!("n={n}: {:.6}/{} ratio {:.5}", r.numeric, r.bound, r.ratio));
                if n == 1 {
                    ch1 = Some(r.numeric);
                }
            }
            Err(e) => {
                pass = false;
                parts.push(format!("n={n}: error {e}"));
            }
        }
    }
    // the disc at K = 1 has Ric = -1; the n = 1 ball is normalized to Ric = -2
    match (ch1, disc) {
        (Some(b), Some(d)) => {
            let rel = b / (2.0 * d);
            pass &= (rel - 1.0).abs() <= 0.01;
            parts.push(format!("ball(1) / (2 * disc) = {rel:.5}"));
        }
        _ => {
            pass = false;
            parts.push("cross-check unavailable".into());
        }
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn criterion_7() -> Outcome {
    let model = RadialModel::real(2, 1.0).unwrap();
    let runs: Vec<_> = [200, 400, 800].iter().map(|&g| lambda0_estimate(&model, 20.0, g).unwrap()).collect();
    let order = observed_order(runs[0].lambda_min, runs[1].lambda_min, runs[2].lambda_min);
    let worst = runs.iter().map(|r| r.residual).fold(0.0, f64::max);
    let pass = (1.8..=2.2).contains(&order) && worst <= 1e-10;
    Outcome { pass, detail: format!("R=20, N=200/400/800: order {order:.4}, max residual {worst:.2e}") }
}

fn criterion_8() -> Outcome {
    let fault = StarFault { monomial: Monomial::from_indices(&[1], &[]).unwrap() };
    let model = KahlerModel::with_star_fault(2, fault).expect("model");
    let spec = RandomSpec::new(SEED);
    let reports: Vec<SuiteReport> =
        [Suite::Star, Suite::HodgeRiemann, Suite::PrimitiveNorms].iter().map(|&s| run_suite(s, &model, 20, &spec)).collect();
    let failures: usize = reports.iter().map(|r| r.failures.len()).sum();
    let which: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.suite.as_str()).collect();
    Outcome { pass: failures >= 1, detail: format!("sign flip on *dz1 at n=2: {failures} failures in [{}]", which.join(", ")) }
}

fn main() -> ExitCode {
    let mut all = true;
    let mut report = |i: usize, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let o = f();
        all &= o.pass;
        println!("criterion {i}: {} ({:.1} s) {}", if o.pass { "PASS" } else { "FAIL" }, t.elapsed().as_secs_f64(), o.detail);
    };
    report(1, &criterion_1);
    report(2, &criterion_2);
    report(3, &criterion_3);
    report(4, &criterion_4);
    let disc = std::cell::Cell::new(None);
    report(5, &|| {
        let (o, d) = criterion_5();
        disc.set(d);
        o
    });
    report(6, &|| criterion_6(disc.get()));
    report(7, &criterion_7);
    report(8, &criterion_8);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
