//! Hölder exponent estimation for the vertical field component
//! X2(y) = slope(g^-1(y)), and the structured blow-up family certifying that
//! X2 is not Lipschitz.
//!
//! The guaranteed exponent is alpha = 1/(3r); the empirical envelope sits
//! higher (the sharp two-thirds law of the gap family), and both are inside
//! the acceptance band. Pairs are sampled stratified across gap stages:
//! uniform pairs alone would never see the small scales, which carry no
//! Lebesgue measure.

use super::{fit_line, random_gap, suite_rng, CheckSet, SuiteResult};
use crate::cantor::gap_bounds;
use crate::error::{Error, Result};
use crate::foliation::FoliationFamily;
use crate::generator::Generator;
use rand::Rng;

/// One row of the structured blow-up table: the difference quotient of X2
/// between the left endpoint and the midpoint of the leftmost stage-n gap.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct BlowupRow {
    pub stage: u32,
    pub quotient: f64,
}

/// Result of the Hölder fit.
#[derive(Debug, Clone, serde::Serialize)]
pub struct HolderReport {
    /// Upper-envelope exponent fitted on log |dX2| vs log |dy|.
    pub fitted_alpha: f64,
    /// Intercept of the envelope fit (natural log of the constant).
    pub fitted_log_constant: f64,
    /// Number of sampled pairs entering the envelope.
    pub pair_count: usize,
    /// Root-mean-square residual of the envelope points around the fit.
    pub residual_rms: f64,
    /// Structured blow-up quotients, strictly increasing in the stage.
    pub blowup_table: Vec<BlowupRow>,
}

/// Closed form of the structured blow-up quotient: (2^(-2r-1) / A) 3^(rn).
pub(crate) fn blowup_closed_form(gen: &Generator, stage: u32) -> f64 {
    let r = gen.order().get() as i32;
    2f64.powi(-2 * r - 1) / gen.bump_integral() * 3f64.powi(r * stage as i32)
}

/// Samples difference quotients of X2 stratified by scale and fits the
/// upper-envelope exponent; also evaluates the structured blow-up family.
///
/// Pairs are generated in leaf coordinates, where X2(g(x)) = slope(x)
/// identically, so the quotients probe the field and not inversion noise.
pub fn estimate_holder(gen: &Generator, pairs: usize, seed: u64) -> Result<HolderReport> {
    if pairs < 1000 {
        return Err(Error::domain(format!(
            "holder estimation needs at least 1000 pairs, got {pairs}"
        )));
    }
    let mut rng = suite_rng(seed, 5);
    let r = gen.order().get() as i32;

    // Deepest stage whose gap mass still stands well clear of the rise ulp.
    let resolvable = (1..=12u32)
        .take_while(|&n| {
            0.5 * gen.bump_integral() * 27f64.powi(-r * n as i32)
                > 1e3 * f64::EPSILON * gen.total_rise()
        })
        .last()
        .unwrap_or(1);

    let mut samples: Vec<(f64, f64)> = Vec::with_capacity(pairs);
    let structured = pairs / 2;
    let per_stage = (structured / resolvable as usize).max(1);
    for stage in 1..=resolvable {
        for _ in 0..per_stage {
            let gap = random_gap(&mut rng, stage);
            let (a, b) = gap_bounds(&gap)?;
            // Pair the gap's left endpoint with an interior point.
            let s: f64 = rng.random_range(0.05..0.95);
            let x = a + s * (b - a);
            let dy = gen.rise(x) - gen.rise(a);
            let dh = (gen.slope(x) - gen.slope(a)).abs();
            if dy > 0.0 && dh > 0.0 {
                samples.push((dy, dh));
            }
        }
    }
    while samples.len() < pairs {
        let x1: f64 = rng.random_range(0.0..1.0);
        let x2: f64 = rng.random_range(0.0..1.0);
        let dy = (gen.rise(x2) - gen.rise(x1)).abs();
        let dh = (gen.slope(x2) - gen.slope(x1)).abs();
        if dy > 0.0 && dh > 0.0 {
            samples.push((dy, dh));
        }
    }

    // Upper envelope: max |dX2| per decade of |dy|, fitted in log-log space.
    let mut envelope: std::collections::BTreeMap<i32, f64> = std::collections::BTreeMap::new();
    for &(dy, dh) in &samples {
        let bin = dy.log10().floor() as i32;
        let entry = envelope.entry(bin).or_insert(0.0);
        *entry = entry.max(dh);
    }
    let points: Vec<(f64, f64)> = envelope
        .iter()
        .map(|(&bin, &dh)| (bin as f64 * std::f64::consts::LN_10, dh.ln()))
        .collect();
    if points.len() < 3 {
        return Err(Error::domain(
            "degenerate holder sampling: fewer than three envelope scales".to_string(),
        ));
    }
    let (fitted_alpha, fitted_log_constant, residual_rms) = fit_line(&points);

    // Structured blow-up family: leftmost stage-n gaps.
    let mut blowup_table = Vec::new();
    for stage in 1..=8u32 {
        let x_a = 3f64.powi(-(stage as i32));
        let x_m = 1.5 * x_a;
        let quotient =
            (gen.slope(x_m) - gen.slope(x_a)).abs() / (gen.rise(x_m) - gen.rise(x_a)).abs();
        blowup_table.push(BlowupRow { stage, quotient });
    }

    Ok(HolderReport {
        fitted_alpha,
        fitted_log_constant,
        pair_count: samples.len(),
        residual_rms,
        blowup_table,
    })
}

/// The Hölder suite: envelope exponent in band, blow-up quotients on their
/// closed forms, geometric growth by 3^r, and strict increase.
pub(crate) fn holder_suite(family: &FoliationFamily, seed: u64) -> Result<SuiteResult> {
    let gen = family.generator();
    let r = gen.order().get();
    let report = estimate_holder(gen, 10_000, seed)?;
    let mut checks = CheckSet::default();

    let alpha_floor = 1.0 / (3 * r) as f64 - 0.05;
    checks.at_least(
        "fitted envelope exponent (lower)",
        report.fitted_alpha,
        alpha_floor,
    );
    checks.at_most("fitted envelope exponent (upper)", report.fitted_alpha, 1.0);

    let mut max_rel = 0f64;
    for row in &report.blowup_table {
        let exact = blowup_closed_form(gen, row.stage);
        max_rel = max_rel.max((row.quotient - exact).abs() / exact);
    }
    checks.at_most("blow-up quotient relative error", max_rel, 0.05);

    let growth = 3f64.powi(r as i32);
    let (mut min_growth, mut max_growth) = (f64::INFINITY, 0f64);
    let mut increasing = true;
    for w in report.blowup_table.windows(2) {
        let ratio = w[1].quotient / w[0].quotient;
        min_growth = min_growth.min(ratio / growth);
        max_growth = max_growth.max(ratio / growth);
        increasing &= w[1].quotient > w[0].quotient;
    }
    checks.at_least("blow-up growth ratio (lower, rel. 3^r)", min_growth, 0.8);
    checks.at_most("blow-up growth ratio (upper, rel. 3^r)", max_growth, 1.2);
    checks.at_most(
        "blow-up monotonicity violations",
        f64::from(!increasing as u8),
        0.0,
    );

    Ok(checks.finish("holder"))
}
