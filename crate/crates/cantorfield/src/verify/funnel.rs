//! The ODE funnel: non-unique integrability made quantitative.
//!
//! Every leaf y = g_t(x) of every foliation passes through the origin and
//! solves dy/dx = slope(g^-1(y)); so does the constant solution y = 0. A
//! fixed-step integrator started exactly at (0, 0) therefore follows the
//! minimal solution and lands below the band [g_1(x_end), g_0(x_end)] swept
//! by the leaf family; the slack must dominate that structural offset (g(1)
//! at x_end = 2) as well as the truncation error. 10 * step does for the
//! steps exercised here, for both methods.

use super::{CheckSet, SuiteResult};
use crate::error::{Error, Result};
use crate::foliation::{FoliationFamily, FoliationParam};

/// Fixed-step integration method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegratorKind {
    Euler,
    RungeKutta4,
}

impl std::fmt::Display for IntegratorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IntegratorKind::Euler => f.write_str("euler"),
            IntegratorKind::RungeKutta4 => f.write_str("rk4"),
        }
    }
}

impl std::str::FromStr for IntegratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euler" => Ok(IntegratorKind::Euler),
            "rk4" => Ok(IntegratorKind::RungeKutta4),
            other => Err(Error::domain(format!(
                "unknown integrator '{other}' (expected euler or rk4)"
            ))),
        }
    }
}

/// Integrates dy/dx = f(x, y) from (x0, y0) to x_end with a fixed step
/// (the last step is shortened to land exactly on x_end).
pub fn integrate(
    f: impl Fn(f64, f64) -> Result<f64>,
    x0: f64,
    y0: f64,
    x_end: f64,
    step: f64,
    kind: IntegratorKind,
) -> Result<f64> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::domain(format!(
            "step must be a positive real, got {step}"
        )));
    }
    if x_end < x0 {
        return Err(Error::domain(format!(
            "integration runs forward: x_end {x_end} < x0 {x0}"
        )));
    }
    let mut x = x0;
    let mut y = y0;
    while x < x_end {
        let h = step.min(x_end - x);
        y = match kind {
            IntegratorKind::Euler => y + h * f(x, y)?,
            IntegratorKind::RungeKutta4 => {
                let k1 = f(x, y)?;
                let k2 = f(x + 0.5 * h, y + 0.5 * h * k1)?;
                let k3 = f(x + 0.5 * h, y + 0.5 * h * k2)?;
                let k4 = f(x + h, y + h * k3)?;
                y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            }
        };
        x += h;
    }
    Ok(y)
}

/// Landing of one numeric trajectory from the origin.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct Landing {
    pub method: IntegratorKind,
    pub step: f64,
    pub landing: f64,
    /// Containment slack for this method and step.
    pub slack: f64,
    pub inside_inflated_band: bool,
}

/// Funnel evidence at x_end.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FunnelReport {
    pub x_end: f64,
    /// Heights of the extremal leaves through the origin: [g_1, g_0](x_end).
    pub band_low: f64,
    pub band_high: f64,
    pub landings: Vec<Landing>,
    /// Largest ODE residual of each exact leaf over 1000 grid points.
    pub leaf_residuals: Vec<(f64, f64)>,
    /// Human-readable notes, e.g. a landing that exited the inflated band.
    pub findings: Vec<String>,
}

/// Integrates the field from (0, 0) to x_end and locates the landing inside
/// the exact leaf band; every leaf of `t_grid` is first checked to satisfy
/// the ODE pointwise.
pub fn ode_funnel(
    family: &FoliationFamily,
    method: IntegratorKind,
    step: f64,
    x_end: f64,
    t_grid: &[FoliationParam],
) -> Result<FunnelReport> {
    if !x_end.is_finite() || x_end < 0.0 {
        return Err(Error::domain(format!(
            "x_end must be a non-negative real, got {x_end}"
        )));
    }
    let t_bottom = FoliationParam::new(1.0).expect("1 in range");
    let t_top = FoliationParam::new(0.0).expect("0 in range");
    let band_low = family.leaf_height(t_bottom, x_end)?;
    let band_high = family.leaf_height(t_top, x_end)?;

    // Exact leaves must satisfy the ODE before any claim about the numeric
    // trajectory is made.
    let delta = 1e-7;
    let span = x_end.max(1.0);
    let mut leaf_residuals = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let mut max_residual = 0f64;
        for i in 0..1000 {
            let x = span * i as f64 / 999.0;
            let fd = (family.leaf_height(t, x + delta)? - family.leaf_height(t, x - delta)?)
                / (2.0 * delta);
            let field = family.field_at(x, family.leaf_height(t, x)?)?.dy;
            max_residual = max_residual.max((fd - field).abs());
        }
        leaf_residuals.push((t.get(), max_residual));
    }

    let landing = integrate(
        |_x, y| Ok(family.field_at(0.0, y)?.dy),
        0.0,
        0.0,
        x_end,
        step,
        method,
    )?;
    let slack = 10.0 * step;
    let inside = landing >= band_low - slack && landing <= band_high + slack;
    let mut findings = Vec::new();
    if !inside {
        findings.push(format!(
            "{method} landing {landing:e} exits the band [{band_low:e}, {band_high:e}] \
             inflated by {slack:e}"
        ));
    }
    Ok(FunnelReport {
        x_end,
        band_low,
        band_high,
        landings: vec![Landing {
            method,
            step,
            landing,
            slack,
            inside_inflated_band: inside,
        }],
        leaf_residuals,
        findings,
    })
}

/// Funnel suite at x_end = 2: band endpoints on their closed forms, leaf
/// residuals, and both integrators landing inside the inflated band.
pub(crate) fn funnel_suite(
    family: &FoliationFamily,
    t_grid: &[FoliationParam],
) -> Result<SuiteResult> {
    let gen = family.generator();
    let total = gen.total_rise();
    let mut checks = CheckSet::default();

    let runs = [
        (IntegratorKind::Euler, 1e-3),
        (IntegratorKind::RungeKutta4, 1e-2),
    ];
    for (method, step) in runs {
        let report = ode_funnel(family, method, step, 2.0, t_grid)?;
        checks.at_most(
            format!("band low vs g(1) [{method}]"),
            (report.band_low - total).abs(),
            1e-10,
        );
        checks.at_most(
            format!("band high vs g(1) + 1 [{method}]"),
            (report.band_high - (total + 1.0)).abs(),
            1e-10,
        );
        let max_leaf_residual = report
            .leaf_residuals
            .iter()
            .map(|&(_, r)| r)
            .fold(0f64, f64::max);
        checks.at_most(
            format!("exact-leaf ODE residual [{method}]"),
            max_leaf_residual,
            1e-4,
        );
        let outside = report
            .landings
            .iter()
            .filter(|l| !l.inside_inflated_band)
            .count();
        checks.at_most(
            format!("landings outside inflated band [{method}]"),
            outside as f64,
            0.0,
        );
    }
    Ok(checks.finish("ode_funnel"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{EvalConfig, SmoothnessOrder};

    fn family() -> FoliationFamily {
        FoliationFamily::new(SmoothnessOrder::new(1).unwrap(), EvalConfig::default())
    }

    #[test]
    fn integrator_on_a_smooth_problem() {
        // dy/dx = y from (0, 1): e at x = 1.
        let f = |_: f64, y: f64| Ok(y);
        let euler = integrate(f, 0.0, 1.0, 1.0, 1e-4, IntegratorKind::Euler).unwrap();
        assert!((euler - std::f64::consts::E).abs() < 2e-4);
        let rk4 = integrate(f, 0.0, 1.0, 1.0, 1e-2, IntegratorKind::RungeKutta4).unwrap();
        assert!((rk4 - std::f64::consts::E).abs() < 1e-9);
        assert!(integrate(f, 0.0, 1.0, 1.0, 0.0, IntegratorKind::Euler).is_err());
        assert!(integrate(f, 1.0, 1.0, 0.0, 0.1, IntegratorKind::Euler).is_err());
    }

    #[test]
    fn degenerate_run_lands_at_the_origin() {
        let family = family();
        let grid = [FoliationParam::new(0.5).unwrap()];
        let report = ode_funnel(&family, IntegratorKind::Euler, 1e-2, 0.0, &grid).unwrap();
        assert_eq!(report.landings[0].landing, 0.0);
        assert!(report.band_low.abs() < 1e-13);
        assert!(report.band_high.abs() < 1e-13);
    }

    #[test]
    fn band_at_two_matches_closed_forms() {
        let family = family();
        let grid = [
            FoliationParam::new(0.0).unwrap(),
            FoliationParam::new(1.0).unwrap(),
        ];
        let report = ode_funnel(&family, IntegratorKind::RungeKutta4, 1e-2, 2.0, &grid).unwrap();
        assert!((report.band_low - 1.0 / 750.0).abs() < 1e-10);
        assert!((report.band_high - (1.0 / 750.0 + 1.0)).abs() < 1e-10);
        // Both fixed-step methods stay on the minimal solution.
        assert_eq!(report.landings[0].landing, 0.0);
        assert!(report.landings[0].inside_inflated_band);
        assert!(report.findings.is_empty());
    }

    #[test]
    fn below_the_axis_the_solution_is_unique() {
        // From (0, -1) the field is smooth and the solution is the translate
        // y = g(x - 1) = -(1 - x)^2 until it reaches the axis.
        let family = family();
        let gen = family.generator();
        let landing = integrate(
            |_x, y| Ok(family.field_at(0.0, y).unwrap().dy),
            0.0,
            -1.0,
            0.5,
            1e-3,
            IntegratorKind::RungeKutta4,
        )
        .unwrap();
        assert!(
            (landing - gen.rise(-0.5)).abs() < 1e-9,
            "landing = {landing}"
        );
        assert!((landing - -0.25).abs() < 1e-9);
    }
}
