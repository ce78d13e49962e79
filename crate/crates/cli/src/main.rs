//! `smoothing`: optimal smoothing constants from the command line.

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use smoothing_core::closedform;
use smoothing_core::dirac::dirac_combine;
use smoothing_core::lambda::{lambda_profile, log_grid};
use smoothing_core::report::build_report;
use smoothing_core::suite::run_suite;
use smoothing_core::{AccuracyBudget, Equation, Error, Route, SearchConfig, WeightPair};

/// Exit code when a closed-form hypothesis (such as F̂ ≥ 0) fails.
const EXIT_HYPOTHESIS: u8 = 2;
/// Exit code for a truncated k search under `--strict`.
const EXIT_TRUNCATED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "smoothing", version, about = "Optimal constants of smoothing estimates for the Schrödinger and Dirac equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute an optimal constant and print it as a JSON report.
    ///
    /// Exit codes: 0 success, 1 error, 2 hypothesis failure, 3 truncated
    /// k search with --strict (checked before 2).
    Constant(ConstantArgs),
    /// Print the profile λ_k(r), or λ̃_k(r) for --eq dirac, on a log grid.
    Profile(ProfileArgs),
    /// Run the verification suite; exits 1 when any check fails.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EqArg {
    Schrodinger,
    Dirac,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
enum PsiArg {
    PairDefault,
    SqrtR,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RouteArg {
    Auto,
    Bessel,
    Legendre,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct CaseArgs {
    #[arg(long, value_enum, default_value = "schrodinger")]
    eq: EqArg,
    /// Weight id: typeA:s=2, typeB:s=1.5, typeC:s=2, gaussian, exp, besselK0,
    /// fejer or custom:<csv with an `r,w` header>.
    #[arg(long)]
    weight: String,
    /// Dimension.
    #[arg(long)]
    d: usize,
    /// Mass, Dirac only.
    #[arg(long)]
    m: Option<f64>,
    /// Weight parameter, for ids given without one (e.g. `--weight typeB --s 1.5`).
    #[arg(long)]
    s: Option<f64>,
    #[arg(long, value_enum, default_value = "pair-default")]
    psi: PsiArg,
    #[arg(long, value_enum, default_value = "auto")]
    route: RouteArg,
    /// Relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConstantArgs {
    #[command(flatten)]
    case: CaseArgs,
    #[arg(long, default_value_t = 1e-3)]
    r_min: f64,
    #[arg(long, default_value_t = 1e3)]
    r_max: f64,
    #[arg(long, default_value_t = 241)]
    grid: usize,
    #[arg(long, default_value_t = 64)]
    k_max: usize,
    /// Treat a truncated k search as an error (exit 3).
    #[arg(long)]
    strict: bool,
}

#[derive(Args, Debug)]
struct ProfileArgs {
    #[command(flatten)]
    case: CaseArgs,
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long, default_value_t = 1e-2)]
    r_min: f64,
    #[arg(long, default_value_t = 1e2)]
    r_max: f64,
    #[arg(long, default_value_t = 201)]
    grid: usize,
    /// Divide by (2π)^{d−1}‖w‖_{L¹}, which is 2π‖w‖ in two dimensions.
    #[arg(long)]
    normalized: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Run only the checks whose id contains this string.
    #[arg(long)]
    only: Option<String>,
    /// Write the JSON results to this file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl CaseArgs {
    fn pair(&self) -> anyhow::Result<WeightPair> {
        let id = match self.s {
            Some(s) if !self.weight.contains(':') => format!("{}:s={s}", self.weight),
            Some(_) => bail!("--s given but --weight `{}` already has a parameter", self.weight),
            None => self.weight.clone(),
        };
        let pair = WeightPair::parse(&id)?;
        Ok(match self.psi {
            PsiArg::PairDefault => pair,
            PsiArg::SqrtR => pair.with_sqrt_r_psi(),
        })
    }

    fn equation(&self) -> anyhow::Result<Equation> {
        match (self.eq, self.m) {
            (EqArg::Schrodinger, Some(_)) => bail!("--m only applies to --eq dirac"),
            (EqArg::Schrodinger, None) => Ok(Equation::Schrodinger),
            (EqArg::Dirac, m) => Ok(Equation::Dirac { m: m.unwrap_or(0.0) }),
        }
    }

    fn route(&self) -> Route {
        match self.route {
            RouteArg::Auto => Route::Auto,
            RouteArg::Bessel => Route::Bessel,
            RouteArg::Legendre => Route::Legendre,
        }
    }

    fn budget(&self) -> anyhow::Result<AccuracyBudget> {
        Ok(AccuracyBudget::new(self.rel_tol, AccuracyBudget::default().abs_tol)?)
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn cmd_constant(a: &ConstantArgs) -> anyhow::Result<u8> {
    let pair = a.case.pair()?;
    let eq = a.case.equation()?;
    let cfg = SearchConfig {
        r_min: a.r_min,
        r_max: a.r_max,
        grid_points: a.grid,
        k_max: a.k_max,
        route: a.case.route(),
        budget: a.case.budget()?,
        ..SearchConfig::default()
    };
    let hypothesis = match closedform::lookup(eq, a.case.d, &pair) {
        Err(Error::Hypothesis(msg)) => Some(msg),
        _ => None,
    };
    let rep = build_report(eq, a.case.d, &pair, &cfg)?;
    emit(&a.case.output, &(rep.to_json()? + "\n"))?;
    for w in &rep.warnings {
        eprintln!("warning: {w}");
    }
    if a.strict && rep.warnings.iter().any(|w| w.contains("truncated")) {
        eprintln!("error: k search truncated at k_max = {} (--strict)", a.k_max);
        return Ok(EXIT_TRUNCATED);
    }
    if let Some(msg) = hypothesis {
        eprintln!("error: hypothesis failed: {msg}");
        return Ok(EXIT_HYPOTHESIS);
    }
    Ok(0)
}

fn cmd_profile(a: &ProfileArgs) -> anyhow::Result<u8> {
    let pair = a.case.pair()?;
    let eq = a.case.equation()?;
    let d = a.case.d;
    pair.validate_for_dimension(d)?;
    if !(a.r_min > 0.0 && a.r_min < a.r_max && a.r_max.is_finite()) || a.grid < 2 {
        bail!("need 0 < r-min < r-max and at least 2 grid points");
    }
    let grid = log_grid(a.r_min, a.r_max, a.grid);
    let route = a.case.route();
    let row = |k| lambda_profile(k, d, &pair, &grid, route, false).map(|p| p.values);
    let mut values = row(a.k)?;
    if let Equation::Dirac { m } = eq {
        let next = row(a.k + 1)?;
        for ((v, &n), &r) in values.iter_mut().zip(&next).zip(&grid) {
            *v = dirac_combine(*v, n, r, m);
        }
    }
    if a.normalized {
        let norm = (2.0 * PI).powi(d as i32 - 1) * pair.l1_norm()?;
        values.iter_mut().for_each(|v| *v /= norm);
    }
    let text = match a.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["r", "value"])?;
            for (r, v) in grid.iter().zip(&values) {
                w.write_record([r.to_string(), v.to_string()])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Json => serde_json::to_string_pretty(&serde_json::json!({ "r": grid, "value": values }))? + "\n",
    };
    emit(&a.case.output, &text)?;
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs) -> anyhow::Result<u8> {
    let outcomes = run_suite(a.only.as_deref());
    if outcomes.is_empty() {
        bail!("no check matches `{}`", a.only.as_deref().unwrap_or(""));
    }
    for o in &outcomes {
        eprintln!(
            "{} {:<16} worst {:.3e} (tol {:.0e})  {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.worst,
            o.tolerance,
            o.title
        );
    }
    let json = serde_json::to_string_pretty(&outcomes)?;
    emit(&a.output, &(json + "\n"))?;
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id.as_str()).collect();
    if failed.is_empty() {
        Ok(0)
    } else {
        eprintln!("failed checks: {}", failed.join(", "));
        for o in outcomes.iter().filter(|o| !o.passed) {
            for f in &o.failures {
                eprintln!("  {}: {f}", o.id);
            }
        }
        Ok(1)
    }
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("SMOOTH_CONST_THREADS") {
        let n: usize = v.trim().parse().with_context(|| format!("SMOOTH_CONST_THREADS = `{v}`"))?;
        if n == 0 {
            bail!("SMOOTH_CONST_THREADS must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = configure_threads().and_then(|()| match &cli.command {
        Command::Constant(a) => cmd_constant(a),
        Command::Profile(a) => cmd_profile(a),
        Command::Verify(a) => cmd_verify(a),
    });
    match res {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::Hypothesis(_)) => ExitCode::from(EXIT_HYPOTHESIS),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
