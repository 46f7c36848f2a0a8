//! Tangency of leaves to the field and the flatness (contact-order) fit at
//! the transported Cantor set.
//!
//! At a point z0 of C_t the leaf is flat to order r + 1: |g_t(z0 + d) -
//! g_t(z0)| <= B d^(r+1). The fitted log-log order at such points is in fact
//! noticeably larger (the rise decays like d^(3r) along the Cantor
//! structure), so the acceptance threshold r + 0.9 sits well below it; at an
//! off-Cantor control point the graph has nonzero slope and the order drops
//! to one.

use super::{cantor_point, fit_line, random_gap, suite_rng, CheckSet, SuiteResult};
use crate::cantor::gap_bounds;
use crate::error::Result;
use crate::foliation::{FoliationFamily, FoliationParam};

/// Contact-order fit at one anchor point.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct ContactFit {
    pub t: f64,
    /// Anchor abscissa z0.
    pub z0: f64,
    /// Whether the anchor was taken on the transported Cantor set.
    pub on_cantor_image: bool,
    /// Fitted log-log slope of |g_t(z0 + d) - g_t(z0)| against d.
    pub order: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct TangencyReport {
    /// Largest |centred-difference leaf slope - field| over the sample grid.
    pub max_residual: f64,
    /// Forward-difference slope of the origin leaf at 0.
    pub origin_slope: f64,
    pub fits: Vec<ContactFit>,
}

/// Measures leaf tangency residuals and fits contact orders at Cantor and
/// control anchors over the given parameter grid.
pub fn check_tangency_flatness(
    family: &FoliationFamily,
    t_grid: &[FoliationParam],
    seed: u64,
) -> Result<TangencyReport> {
    let mut rng = suite_rng(seed, 6);
    let delta = 1e-7;

    let mut max_residual = 0f64;
    for &t in t_grid {
        for i in 0..1000 {
            let z = -0.5 + 3.0 * i as f64 / 999.0;
            let fd = (family.leaf_height(t, z + delta)? - family.leaf_height(t, z - delta)?)
                / (2.0 * delta);
            let field = family.field_at(z, family.leaf_height(t, z)?)?.dy;
            max_residual = max_residual.max((fd - field).abs());
        }
    }

    // One-sided slope at the origin: every leaf through the origin leaves it
    // horizontally. (The left extension has nonzero curvature, so a centred
    // difference would see the -x^(2r) branch instead.)
    let t_mid = t_grid[t_grid.len() / 2];
    let origin_slope = family.leaf_height(t_mid, delta)? / delta;

    // Contact-order fits: anchors on C_t via x0 in C, plus mid-gap controls.
    // Offsets stay in [1e-4, 1e-2]: below that the true spread (order ~3r)
    // sinks under the rise evaluation noise and the fit would only measure
    // the noise floor.
    let offsets: Vec<f64> = (0..=8)
        .map(|i| 10f64.powf(-2.0 - 0.25 * i as f64))
        .collect();
    let mut fits = Vec::new();
    for &t in t_grid {
        let mut anchors = vec![0.0];
        for _ in 0..3 {
            anchors.push(cantor_point(&mut rng, 12));
        }
        for &x0 in &anchors {
            let z0 = family.shear(t, x0)?;
            let base = family.leaf_height(t, z0)?;
            let pts: Vec<(f64, f64)> = offsets
                .iter()
                .map(|&d| {
                    let spread = (family.leaf_height(t, z0 + d).expect("finite") - base).abs();
                    (d.ln(), spread.max(f64::MIN_POSITIVE).ln())
                })
                .collect();
            let (order, _, _) = fit_line(&pts);
            fits.push(ContactFit {
                t: t.get(),
                z0,
                on_cantor_image: true,
                order,
            });
        }
        // Off-Cantor control: a mid-gap anchor has order ~1.
        let gap = random_gap(&mut rng, 2);
        let (a, b) = gap_bounds(&gap)?;
        let z0 = family.shear(t, 0.5 * (a + b))?;
        let base = family.leaf_height(t, z0)?;
        let pts: Vec<(f64, f64)> = offsets
            .iter()
            .map(|&d| {
                let spread = (family.leaf_height(t, z0 + d).expect("finite") - base).abs();
                (d.ln(), spread.max(f64::MIN_POSITIVE).ln())
            })
            .collect();
        let (order, _, _) = fit_line(&pts);
        fits.push(ContactFit {
            t: t.get(),
            z0,
            on_cantor_image: false,
            order,
        });
    }

    Ok(TangencyReport {
        max_residual,
        origin_slope,
        fits,
    })
}

/// Tangency/flatness suite over the default parameter grid.
pub(crate) fn tangency_suite(
    family: &FoliationFamily,
    t_grid: &[FoliationParam],
    seed: u64,
) -> Result<SuiteResult> {
    let r = family.generator().order().get() as f64;
    let report = check_tangency_flatness(family, t_grid, seed)?;
    let mut checks = CheckSet::default();
    checks.at_most("leaf ODE residual", report.max_residual, 1e-4);
    checks.at_most("origin slope", report.origin_slope.abs(), 1e-8);
    let min_cantor_order = report
        .fits
        .iter()
        .filter(|f| f.on_cantor_image)
        .map(|f| f.order)
        .fold(f64::INFINITY, f64::min);
    checks.at_least(
        "contact order at transported Cantor points",
        min_cantor_order,
        r + 0.9,
    );
    let max_control_dev = report
        .fits
        .iter()
        .filter(|f| !f.on_cantor_image)
        .map(|f| (f.order - 1.0).abs())
        .fold(0f64, f64::max);
    checks.at_most(
        "control contact order deviation from 1",
        max_control_dev,
        0.2,
    );
    Ok(checks.finish("tangency_flatness"))
}
