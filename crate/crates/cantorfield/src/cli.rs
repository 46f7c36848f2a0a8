//! Command-line front end: point evaluation, leaf export, verification runs
//! and the ODE funnel demo.
//!
//! Exit codes are a stable contract: 0 on success, 1 when a verification
//! suite fails, 2 on usage, domain or numeric errors.

use crate::config::{EvalConfig, SmoothnessOrder};
use crate::error::{Error, Result};
use crate::export::{format_value, write_leaves_csv, write_leaves_svg, LeafCurve};
use crate::foliation::{FoliationFamily, FoliationParam, LeafSpec};
use crate::staircase::psi;
use crate::verify::{integrate, ode_funnel, run_suites, IntegratorKind, SuiteSelector};
use crate::{classify, gap_bounds, PointClass};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "cantorfield",
    version,
    about = "Evaluators, leaf exporters and verification suites for a H\u{f6}lder \
             vector field tangent to a family of distinct foliations"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one function of the construction at a point
    Eval(EvalArgs),
    /// Sample leaves onto CSV (and optionally SVG)
    Leaves(LeavesArgs),
    /// Run verification suites and emit a structured report
    Verify(VerifyArgs),
    /// Integrate the field from the origin and report the funnel band
    Ode(OdeArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Smoothness order r of the construction (1..=6)
    #[arg(long = "r", default_value_t = 1)]
    r: u32,
    /// Ternary truncation depth
    #[arg(long, default_value_t = 34)]
    depth: u32,
    /// Absolute bisection tolerance
    #[arg(long, default_value_t = 1e-14)]
    tol: f64,
}

impl CommonArgs {
    fn family(&self) -> Result<FoliationFamily> {
        let order = SmoothnessOrder::new(self.r)?;
        let cfg = EvalConfig::new(self.depth, self.tol, 200)?;
        Ok(FoliationFamily::new(order, cfg))
    }
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Function to evaluate: h, g, ginv, psi, ft, gt, X or classify
    #[arg(long = "fn")]
    function: String,
    /// Abscissa operand (h, g, gt, X, classify)
    #[arg(long, allow_negative_numbers = true)]
    x: Option<f64>,
    /// Ordinate operand (ginv, psi, ft, X)
    #[arg(long, allow_negative_numbers = true)]
    y: Option<f64>,
    /// Foliation parameter (ft, gt)
    #[arg(long, default_value_t = 0.0)]
    t: f64,
}

#[derive(Debug, Args)]
struct LeavesArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated foliation parameters (empty for a header-only CSV)
    #[arg(long, default_value = "0,0.25,0.5,0.75,1", allow_hyphen_values = true)]
    t: String,
    /// Comma-separated horizontal translates
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    c: String,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    xmin: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    xmax: f64,
    /// Samples per leaf
    #[arg(long, default_value_t = 201)]
    samples: usize,
    /// CSV output path
    #[arg(long, default_value = "leaves.csv")]
    out: PathBuf,
    /// Optional SVG rendering of the same leaves
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Suite selector: all, holder, tangency, distinctness, ode, invariants
    #[arg(long, default_value = "all")]
    suite: String,
    /// Master seed for the deterministic samplers
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated foliation parameters for the parameterized suites
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Path for the machine-readable report document
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OdeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Integration method: euler or rk4
    #[arg(long, default_value = "euler")]
    method: String,
    /// Fixed integration step
    #[arg(long, default_value_t = 1e-3, allow_negative_numbers = true)]
    step: f64,
    /// Right end of the integration interval
    #[arg(long = "x-end", default_value_t = 2.0, allow_negative_numbers = true)]
    x_end: f64,
    /// Comma-separated foliation parameters whose leaves are residual-checked
    #[arg(long, default_value = "0,0.25,0.5,0.75,1", allow_hyphen_values = true)]
    t: String,
    /// Side-by-side textbook demo; the only recognized value is "sqrt"
    #[arg(long)]
    demo: Option<String>,
}

/// Parses, executes and maps the outcome onto the exit-code contract.
pub fn main_entry() -> std::process::ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match execute(cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            std::process::ExitCode::from(u8::from(outcome.verification_failed))
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::ExitCode::from(2)
        }
    }
}

struct Outcome {
    stdout: String,
    verification_failed: bool,
}

impl Outcome {
    fn text(stdout: String) -> Self {
        Outcome {
            stdout,
            verification_failed: false,
        }
    }
}

fn execute(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Leaves(args) => cmd_leaves(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Ode(args) => cmd_ode(args),
    }
}

fn require(value: Option<f64>, flag: &str, function: &str) -> Result<f64> {
    let v = value
        .ok_or_else(|| Error::domain(format!("--fn {function} requires the --{flag} operand")))?;
    if !v.is_finite() {
        return Err(Error::domain(format!("--{flag} must be finite, got {v}")));
    }
    Ok(v)
}

fn cmd_eval(args: EvalArgs) -> Result<Outcome> {
    let family = args.common.family()?;
    let gen = family.generator();
    let cfg = family.config();
    let name = args.function.as_str();
    let line = match name {
        "h" => format_value(gen.slope(require(args.x, "x", name)?)),
        "g" => format_value(gen.rise(require(args.x, "x", name)?)),
        "ginv" => format_value(gen.rise_inverse(require(args.y, "y", name)?)?),
        "psi" => format_value(psi(gen, require(args.y, "y", name)?)?),
        "ft" => {
            let t = FoliationParam::new(args.t)?;
            format_value(family.leaf_abscissa(t, require(args.y, "y", name)?)?)
        }
        "gt" => {
            let t = FoliationParam::new(args.t)?;
            format_value(family.leaf_height(t, require(args.x, "x", name)?)?)
        }
        "X" => {
            let v = family.field_at(args.x.unwrap_or(0.0), require(args.y, "y", name)?)?;
            format!("{},{}", format_value(v.dx), format_value(v.dy))
        }
        "classify" => match classify(require(args.x, "x", name)?, cfg)? {
            PointClass::InCantor { depth } => format!("InCantor depth={depth}"),
            PointClass::InGap { gap, local } => {
                let (a, b) = gap_bounds(&gap)?;
                format!(
                    "InGap stage={} index={} a={} b={} local={}",
                    gap.stage,
                    gap.index,
                    format_value(a),
                    format_value(b),
                    format_value(local)
                )
            }
            PointClass::OutsideLeft => "OutsideLeft".to_string(),
            PointClass::OutsideRight => "OutsideRight".to_string(),
        },
        other => {
            return Err(Error::domain(format!(
                "unknown function '{other}' (expected h, g, ginv, psi, ft, gt, X or classify)"
            )))
        }
    };
    Ok(Outcome::text(format!("{line}\n")))
}

fn parse_list(text: &str, flag: &str) -> Result<Vec<f64>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Error::domain(format!("--{flag}: cannot parse '{part}' as a real")))
        })
        .collect()
}

fn parse_t_grid(text: &str) -> Result<Vec<FoliationParam>> {
    let mut values = parse_list(text, "t")?;
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    values.into_iter().map(FoliationParam::new).collect()
}

fn cmd_leaves(args: LeavesArgs) -> Result<Outcome> {
    let family = args.common.family()?;
    let t_values = parse_t_grid(&args.t)?;
    let mut c_values = parse_list(&args.c, "c")?;
    c_values.sort_by(|a, b| a.partial_cmp(b).expect("finite"));

    let mut curves = Vec::new();
    for &t in &t_values {
        for &c in &c_values {
            let leaf = LeafSpec { t, c };
            let points = family.sample_leaf(&leaf, args.xmin, args.xmax, args.samples)?;
            curves.push(LeafCurve {
                t: t.get(),
                c,
                points,
            });
        }
    }
    write_leaves_csv(&args.out, &curves)?;
    let mut stdout = format!(
        "wrote {} leaves ({} samples each) to {}\n",
        curves.len(),
        args.samples,
        args.out.display()
    );
    if let Some(svg) = &args.svg {
        write_leaves_svg(svg, &curves)?;
        stdout.push_str(&format!("wrote SVG rendering to {}\n", svg.display()));
    }
    Ok(Outcome::text(stdout))
}

fn cmd_verify(args: VerifyArgs) -> Result<Outcome> {
    let order = SmoothnessOrder::new(args.common.r)?;
    let cfg = EvalConfig::new(args.common.depth, args.common.tol, 200)?;
    let selector: SuiteSelector = args.suite.parse()?;
    let t_grid = args.t.as_deref().map(parse_t_grid).transpose()?;
    let report = run_suites(order, cfg, args.seed, selector, t_grid.as_deref())?;

    let mut stdout = format!(
        "verification: r={} depth={} tol={:e} seed={} suite={}\n",
        report.order, report.config.depth, report.config.tolerance, report.seed, args.suite
    );
    for suite in &report.suites {
        let ms = report
            .timings_ms
            .iter()
            .find(|(name, _)| name == &suite.name)
            .map(|&(_, ms)| ms)
            .unwrap_or(0);
        stdout.push_str(&format!(
            "  [{}] {} ({} checks, {} ms)\n",
            if suite.pass { "PASS" } else { "FAIL" },
            suite.name,
            suite.checks.len(),
            ms
        ));
        for check in &suite.checks {
            if !check.pass {
                stdout.push_str(&format!(
                    "         failed: {} measured={:e} bound={:e}\n",
                    check.label, check.measured, check.bound
                ));
            }
        }
    }
    stdout.push_str(&format!(
        "overall: {}\n",
        if report.pass { "PASS" } else { "FAIL" }
    ));
    if let Some(path) = &args.out {
        std::fs::write(path, report.to_document())
            .map_err(|e| Error::domain(format!("cannot write {}: {e}", path.display())))?;
        stdout.push_str(&format!("report written to {}\n", path.display()));
    }
    Ok(Outcome {
        stdout,
        verification_failed: !report.pass,
    })
}

fn cmd_ode(args: OdeArgs) -> Result<Outcome> {
    if let Some(demo) = &args.demo {
        if demo != "sqrt" {
            return Err(Error::domain(format!(
                "unknown demo '{demo}' (the only recognized demo is sqrt)"
            )));
        }
        return sqrt_demo(args.step, args.x_end);
    }
    let family = args.common.family()?;
    let method: IntegratorKind = args.method.parse()?;
    let t_grid = parse_t_grid(&args.t)?;
    let report = ode_funnel(&family, method, args.step, args.x_end, &t_grid)?;
    let mut stdout = format!(
        "funnel at x_end={} (r={}, method={method}, step={:e})\n",
        report.x_end, args.common.r, args.step
    );
    stdout.push_str(&format!(
        "  exact band: [{}, {}]\n",
        format_value(report.band_low),
        format_value(report.band_high)
    ));
    for landing in &report.landings {
        stdout.push_str(&format!(
            "  landing: {} (slack {:e}, inside inflated band: {})\n",
            format_value(landing.landing),
            landing.slack,
            landing.inside_inflated_band
        ));
    }
    let max_residual = report
        .leaf_residuals
        .iter()
        .map(|&(_, r)| r)
        .fold(0f64, f64::max);
    stdout.push_str(&format!(
        "  exact-leaf ODE residual max: {max_residual:e}\n"
    ));
    for finding in &report.findings {
        stdout.push_str(&format!("  finding: {finding}\n"));
    }
    Ok(Outcome::text(stdout))
}

/// The textbook non-uniqueness example y' = sqrt(|y|), y(0) = 0: both y = 0
/// and y = x^2/4 solve it, and fixed-step methods follow the zero solution.
fn sqrt_demo(step: f64, x_end: f64) -> Result<Outcome> {
    let field = |_: f64, y: f64| Ok(y.abs().sqrt());
    let euler = integrate(field, 0.0, 0.0, x_end, step, IntegratorKind::Euler)?;
    let rk4 = integrate(field, 0.0, 0.0, x_end, step, IntegratorKind::RungeKutta4)?;
    let top = x_end * x_end / 4.0;
    let stdout = format!(
        "demo: y' = sqrt(|y|), y(0) = 0, integrated to x_end={x_end}\n\
         \x20 exact solutions through the origin: y = 0 and y = x^2/4\n\
         \x20 exact band at x_end: [{}, {}]\n\
         \x20 euler landing (step {step:e}): {}\n\
         \x20 rk4 landing (step {step:e}): {}\n",
        format_value(0.0),
        format_value(top),
        format_value(euler),
        format_value(rk4),
    );
    Ok(Outcome::text(stdout))
}
