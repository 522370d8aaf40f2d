//! Command-line front end. Exit codes: 0 success, 1 a verification failed,
//! 2 usage or parse error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{self, format_decimal, format_rational, BoundConstant, BoundKind, BoundParams};
use crate::domains::{self, BoundReport, DomainFactor, DomainSpec, Family, TableRanges};
use crate::error::Error;
use crate::exterior::parse_rational;
use crate::harness::{run_suites, RandomSpec, Suite, SuiteReport};
use crate::kaehler::KahlerModel;
use crate::spectral::{self, RadialModel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "kahler", version, about = "Exact Kähler linear algebra, spectral bound constants and radial eigenvalues")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run randomized exact verification suites.
    Verify(VerifyArgs),
    /// Print spectral bound constants.
    Constants(ConstantsArgs),
    /// λ₀ and ‖η‖² bounds for bounded symmetric domains.
    Bsd(BsdArgs),
    /// Smallest Dirichlet eigenvalue of a geodesic ball.
    Spectrum(SpectrumArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteChoice {
    All,
    Prop31,
    Lemma32,
    Prop33,
    Federer,
    Lefschetz,
    Star,
    #[value(name = "hodge-riemann")]
    HodgeRiemann,
    Sl2,
}

impl SuiteChoice {
    fn suites(self) -> Vec<Suite> {
        let name = match self {
            SuiteChoice::All => return Suite::ALL.to_vec(),
            SuiteChoice::Prop31 => "prop31",
            SuiteChoice::Lemma32 => "lemma32",
            SuiteChoice::Prop33 => "prop33",
            SuiteChoice::Federer => "federer",
            SuiteChoice::Lefschetz => "lefschetz",
            SuiteChoice::Star => "star",
            SuiteChoice::HodgeRiemann => "hodge-riemann",
            SuiteChoice::Sl2 => "sl2",
        };
        vec![name.parse().expect("known suite")]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
    Md,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = SuiteChoice::All)]
    pub suite: SuiteChoice,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    /// Bound on the real and imaginary parts of random coefficients.
    #[arg(long, default_value_t = 3)]
    pub coeff_bound: i64,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long, conflicts_with_all = ["p", "q"])]
    pub k: Option<usize>,
    #[arg(long, requires = "q")]
    pub p: Option<usize>,
    #[arg(long, requires = "p")]
    pub q: Option<usize>,
    /// ‖η‖² as a rational `A/B`; adds the spectral bound `c/η²`.
    #[arg(long)]
    pub eta_sq: Option<String>,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
}

#[derive(Debug, Args)]
pub struct BsdArgs {
    #[arg(long, conflicts_with = "product")]
    pub family: Option<String>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Product of factors, e.g. `I(2,3)*IV(5)*V`.
    #[arg(long)]
    pub product: Option<String>,
    /// Einstein constant `K̄` with `Ric = -K̄ ω`, as `A/B`.
    #[arg(long, default_value = "1")]
    pub ricci: String,
    /// Also print per-degree bounds for a single domain.
    #[arg(long)]
    pub degrees: bool,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelChoice {
    Rh,
    Ch,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_enum)]
    pub model: ModelChoice,
    /// Real dimension for `rh`.
    #[arg(long)]
    pub m: Option<usize>,
    /// Complex dimension for `ch`.
    #[arg(long)]
    pub n: Option<usize>,
    /// Curvature scale for `rh`.
    #[arg(long, default_value_t = 1.0)]
    pub curvature: f64,
    #[arg(long)]
    pub radius: f64,
    #[arg(long)]
    pub grid: usize,
    /// Extra radii, solved with the same step `radius/grid`, then extrapolated.
    #[arg(long, value_delimiter = ',')]
    pub radii: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify(a) => verify(&a, out),
        Command::Constants(a) => constants(&a, out),
        Command::Bsd(a) => bsd(&a, out),
        Command::Spectrum(a) => spectrum(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

type CmdResult = Result<i32, Error>;

fn io(e: impl std::fmt::Display) -> Error {
    Error::Internal(format!("write failed: {e}"))
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let model = KahlerModel::shared(a.dim)?;
    let spec = RandomSpec::new(a.seed).with_bound(a.coeff_bound);
    let reports = run_suites(&a.suite.suites(), &model, a.trials, &spec);
    match a.format {
        ReportFormat::Json => {
            let text = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])
            } else {
                serde_json::to_string_pretty(&reports)
            }
            .map_err(io)?;
            writeln!(out, "{text}").map_err(io)?;
        }
        ReportFormat::Text => {
            for r in &reports {
                write!(out, "{}", r.to_text()).map_err(io)?;
            }
        }
    }
    Ok(if reports.iter().all(|r: &SuiteReport| r.pass) { EXIT_OK } else { EXIT_FAILURE })
}

#[derive(Debug, Serialize)]
struct ConstantRow {
    n: usize,
    k: usize,
    p: Option<usize>,
    q: Option<usize>,
    kind: BoundKind,
    value: String,
    decimal: String,
    /// Middle bidegree only: the bound for `Δ_∂̄`, half the main value.
    dbar_variant: Option<String>,
    eta_sq: Option<String>,
    spectral: Option<String>,
    spectral_decimal: Option<String>,
}

impl ConstantRow {
    fn new(c: &BoundConstant) -> Result<Self, Error> {
        let (n, k, p, q) = match c.params {
            BoundParams::Degree { n, k } => (n, k, None, None),
            BoundParams::Bidegree { n, p, q } => (n, p + q, Some(p), Some(q)),
        };
        let dbar_variant = match (c.kind, p, q) {
            (BoundKind::MiddleBidegree, Some(p), Some(q)) => Some(format_rational(&bounds::middle_pq_bound_dbar(n, p, q)?)),
            _ => None,
        };
        let spectral = c.spectral();
        Ok(ConstantRow {
            n,
            k,
            p,
            q,
            kind: c.kind,
            value: format_rational(&c.value),
            decimal: format_decimal(&c.value),
            dbar_variant,
            eta_sq: c.eta_sq.as_ref().map(format_rational),
            spectral: spectral.as_ref().map(format_rational),
            spectral_decimal: spectral.as_ref().map(format_decimal),
        })
    }

    const HEADER: [&'static str; 11] =
        ["n", "k", "p", "q", "kind", "value", "decimal", "dbar_variant", "eta_sq", "spectral", "spectral_decimal"];

    fn cells(&self) -> Vec<String> {
        let o = |v: &Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        let s = |v: &Option<String>| v.clone().unwrap_or_default();
        let kind = serde_json::to_value(self.kind).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
        vec![
            self.n.to_string(),
            self.k.to_string(),
            o(&self.p),
            o(&self.q),
            kind,
            self.value.clone(),
            self.decimal.clone(),
            s(&self.dbar_variant),
            s(&self.eta_sq),
            s(&self.spectral),
            s(&self.spectral_decimal),
        ]
    }
}

fn constants(a: &ConstantsArgs, out: &mut dyn Write) -> CmdResult {
    let n = a.dim;
    if n == 0 {
        return Err(Error::Usage("--dim must be at least 1".into()));
    }
    let eta = a.eta_sq.as_deref().map(parse_rational).transpose()?;
    let mut consts = Vec::new();
    match (a.k, a.p, a.q) {
        (Some(k), _, _) => consts.push(BoundConstant::degree(n, k)?),
        (None, Some(p), Some(q)) => consts.push(BoundConstant::bidegree(n, p, q)?),
        _ => {
            for k in 0..=2 * n {
                consts.push(BoundConstant::degree(n, k)?);
            }
            for p in 0..=n {
                for q in 0..=n {
                    consts.push(BoundConstant::bidegree(n, p, q)?);
                }
            }
        }
    }
    let rows = consts
        .into_iter()
        .map(|c| match &eta {
            Some(e) => c.with_eta_sq(e.clone()),
            None => Ok(c),
        })
        .map(|c| c.and_then(|c| ConstantRow::new(&c)))
        .collect::<Result<Vec<_>, Error>>()?;
    let cells: Vec<Vec<String>> = rows.iter().map(ConstantRow::cells).collect();
    emit_table(out, a.format, &ConstantRow::HEADER, &cells, &rows)?;
    Ok(EXIT_OK)
}

fn emit_table<S: Serialize>(
    out: &mut dyn Write,
    format: TableFormat,
    header: &[&str],
    cells: &[Vec<String>],
    records: &S,
) -> Result<(), Error> {
    match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header).map_err(io)?;
            for row in cells {
                w.write_record(row).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(io)?;
            out.write_all(&bytes).map_err(io)?;
        }
        TableFormat::Md => {
            writeln!(out, "| {} |", header.join(" | ")).map_err(io)?;
            writeln!(out, "|{}|", vec!["---"; header.len()].join("|")).map_err(io)?;
            for row in cells {
                writeln!(out, "| {} |", row.join(" | ")).map_err(io)?;
            }
        }
        TableFormat::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(records).map_err(io)?).map_err(io)?;
        }
    }
    Ok(())
}

fn bsd(a: &BsdArgs, out: &mut dyn Write) -> CmdResult {
    let ricci = parse_rational(&a.ricci)?;
    let single: Option<DomainSpec> = match (&a.family, &a.product) {
        (Some(f), None) => {
            let family: Family = f.parse()?;
            Some(DomainSpec::irreducible(DomainFactor::new(family, a.p, a.q, a.m)?))
        }
        (None, Some(s)) => Some(s.parse()?),
        (None, None) => {
            if a.p.is_some() || a.q.is_some() || a.m.is_some() {
                return Err(Error::Usage("--p/--q/--m need --family".into()));
            }
            None
        }
        (Some(_), Some(_)) => return Err(Error::Usage("--family and --product are exclusive".into())),
    };
    let reports: Vec<BoundReport> = match single {
        Some(spec) => vec![BoundReport::new(spec, &ricci, a.degrees || a.format == TableFormat::Json)?],
        None => domains::classical_table(&TableRanges::default(), &ricci)?,
    };
    let cells: Vec<Vec<String>> = reports.iter().map(BoundReport::row).collect();
    emit_table(out, a.format, &BoundReport::HEADER, &cells, &reports)?;
    if a.degrees && a.format != TableFormat::Json {
        if let Some(rows) = reports.first().and_then(|r| r.per_degree.as_ref()) {
            writeln!(out).map_err(io)?;
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|d| {
                    let kind = serde_json::to_value(d.kind).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
                    vec![d.k.to_string(), kind, format_rational(&d.value), format_decimal(&d.value)]
                })
                .collect();
            emit_table(out, a.format, &["k", "kind", "bound", "decimal"], &cells, rows)?;
        }
    }
    Ok(EXIT_OK)
}

fn spectrum(a: &SpectrumArgs, out: &mut dyn Write) -> CmdResult {
    let model = match a.model {
        ModelChoice::Rh => {
            if a.n.is_some() {
                return Err(Error::Usage("--n applies to the ch model; use --m for rh".into()));
            }
            RadialModel::real(a.m.unwrap_or(2), a.curvature)?
        }
        ModelChoice::Ch => {
            if a.m.is_some() {
                return Err(Error::Usage("--m applies to the rh model; use --n for ch".into()));
            }
            let n = a.n.ok_or_else(|| Error::Usage("the ch model needs --n".into()))?;
            RadialModel::complex(n)?
        }
    };
    let results = match &a.radii {
        Some(radii) if !radii.is_empty() => {
            if !(a.radius > 0.0) || a.grid == 0 {
                return Err(Error::Usage("--radius and --grid must be positive".into()));
            }
            spectral::radius_sweep(&model, radii, a.radius / a.grid as f64)?
        }
        _ => vec![spectral::lambda0_estimate(&model, a.radius, a.grid)?],
    };
    match a.format {
        ReportFormat::Json => {
            let text = if results.len() == 1 {
                serde_json::to_string_pretty(&results[0])
            } else {
                serde_json::to_string_pretty(&results)
            }
            .map_err(io)?;
            writeln!(out, "{text}").map_err(io)?;
        }
        ReportFormat::Text => {
            for r in &results {
                writeln!(
                    out,
                    "{} R={} N={} lambda_min={:.12} scaled={:.12} residual={:.3e}{}",
                    r.model.label(),
                    r.radius,
                    r.grid,
                    r.lambda_min,
                    r.scaled_lambda,
                    r.residual,
                    r.extrapolated.map(|x| format!(" extrapolated={x:.12}")).unwrap_or_default()
                )
                .map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}
