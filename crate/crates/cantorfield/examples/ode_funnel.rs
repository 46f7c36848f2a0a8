//! Non-unique integrability, numerically: integrate the field from the
//! origin and compare the landing against the band of exact leaves.
//!
//! Continuum many exact solutions leave the origin (one per foliation,
//! plus the flat one), yet every fixed-step method glues itself to the
//! minimal solution y = 0. The same happens for the textbook equation
//! y' = sqrt(|y|).
//!
//! ```text
//! cargo run --example ode_funnel
//! ```

use cantorfield::foliation::{FoliationFamily, FoliationParam};
use cantorfield::verify::{integrate, ode_funnel, IntegratorKind};
use cantorfield::{EvalConfig, SmoothnessOrder};

fn main() -> cantorfield::Result<()> {
    let family = FoliationFamily::new(SmoothnessOrder::new(1)?, EvalConfig::default());
    let grid: Vec<FoliationParam> = [0.0, 0.5, 1.0]
        .iter()
        .map(|&t| FoliationParam::new(t))
        .collect::<Result<_, _>>()?;

    for (method, step) in [
        (IntegratorKind::Euler, 1e-3),
        (IntegratorKind::RungeKutta4, 1e-2),
    ] {
        let report = ode_funnel(&family, method, step, 2.0, &grid)?;
        println!("{method} with step {step:e} to x_end = 2:");
        println!(
            "  exact leaves through the origin land in [{:.10e}, {:.10e}]",
            report.band_low, report.band_high
        );
        let landing = &report.landings[0];
        println!(
            "  numeric landing {:.10e} (within the band inflated by {:.1e}: {})",
            landing.landing, landing.slack, landing.inside_inflated_band
        );
        let worst = report
            .leaf_residuals
            .iter()
            .map(|&(_, e)| e)
            .fold(0f64, f64::max);
        println!("  every exact leaf satisfies the ODE to {worst:.3e}");
        println!();
    }

    // The classical example: y' = sqrt(|y|) through the origin admits both
    // y = 0 and y = x^2/4.
    let sqrt_field = |_: f64, y: f64| Ok(y.abs().sqrt());
    let landing = integrate(sqrt_field, 0.0, 0.0, 1.0, 1e-3, IntegratorKind::RungeKutta4)?;
    println!(
        "textbook y' = sqrt(|y|): rk4 lands at {landing:e}, exact solutions end at 0 and 0.25"
    );
    Ok(())
}
