//! Pairwise distinctness of the foliation family.
//!
//! Every leaf through the origin satisfies g_t(0) = 0, yet at x = 2 the
//! closed translate branch gives g_t(2) = g(1) + (1 - t)^(2r): any two
//! parameters separate there by |(1 - t)^(2r) - (1 - t')^(2r)| > 0.

use super::{CheckSet, SuiteResult};
use crate::error::Result;
use crate::foliation::{FoliationFamily, FoliationParam};

/// Distinctness evidence for one parameter.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct DistinctnessRow {
    pub t: f64,
    /// Height of the leaf through the origin at x = 0 (should vanish).
    pub origin_value: f64,
    /// Height at x = 2 and its closed form g(1) + (1 - t)^(2r).
    pub translate_value: f64,
    pub translate_exact: f64,
}

/// Separation witness for a pair of parameters.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct Witness {
    pub t1: f64,
    pub t2: f64,
    /// |g_t1(2) - g_t2(2)| as measured.
    pub gap: f64,
    /// |(1 - t1)^(2r) - (1 - t2)^(2r)|.
    pub gap_exact: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct DistinctnessReport {
    pub rows: Vec<DistinctnessRow>,
    pub witnesses: Vec<Witness>,
}

/// Evaluates the common-point and translate closed forms on the given grid
/// and the pairwise separation witnesses.
pub fn check_distinctness(
    family: &FoliationFamily,
    t_grid: &[FoliationParam],
) -> Result<DistinctnessReport> {
    let gen = family.generator();
    let two_r = 2 * gen.order().get() as i32;
    let total = gen.total_rise();
    let mut rows = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        rows.push(DistinctnessRow {
            t: t.get(),
            origin_value: family.leaf_height(t, 0.0)?,
            translate_value: family.leaf_height(t, 2.0)?,
            translate_exact: total + (1.0 - t.get()).powi(two_r),
        });
    }
    let mut witnesses = Vec::new();
    for i in 0..rows.len() {
        for j in (i + 1)..rows.len() {
            witnesses.push(Witness {
                t1: rows[i].t,
                t2: rows[j].t,
                gap: (rows[i].translate_value - rows[j].translate_value).abs(),
                gap_exact: ((1.0 - rows[i].t).powi(two_r) - (1.0 - rows[j].t).powi(two_r)).abs(),
            });
        }
    }
    Ok(DistinctnessReport { rows, witnesses })
}

/// The distinctness suite: the coarse grid carries full pairwise witnesses;
/// a 101-point refinement checks the closed forms and adjacent separation.
pub(crate) fn distinctness_suite(
    family: &FoliationFamily,
    coarse: &[FoliationParam],
) -> Result<SuiteResult> {
    let mut checks = CheckSet::default();

    let report = check_distinctness(family, coarse)?;
    let max_origin = report
        .rows
        .iter()
        .map(|r| r.origin_value.abs())
        .fold(0f64, f64::max);
    let max_translate = report
        .rows
        .iter()
        .map(|r| (r.translate_value - r.translate_exact).abs())
        .fold(0f64, f64::max);
    let max_witness_err = report
        .witnesses
        .iter()
        .map(|w| (w.gap - w.gap_exact).abs())
        .fold(0f64, f64::max);
    checks.at_most("origin common point residual (coarse)", max_origin, 1e-12);
    checks.at_most(
        "translate closed-form residual (coarse)",
        max_translate,
        1e-10,
    );
    checks.at_most("pairwise witness residual (coarse)", max_witness_err, 1e-10);
    // The (0, 1) pair, when sampled, separates by exactly 1.
    if let Some(wide) = report
        .witnesses
        .iter()
        .find(|w| w.t1 == 0.0 && w.t2 == 1.0)
        .map(|w| w.gap)
    {
        checks.at_most("extremal witness vs 1", (wide - 1.0).abs(), 1e-10);
    }

    // 101-point refinement.
    let refined: Vec<FoliationParam> = (0..=100)
        .map(|i| FoliationParam::new(i as f64 / 100.0).expect("grid in range"))
        .collect();
    let gen = family.generator();
    let two_r = 2 * gen.order().get() as i32;
    let total = gen.total_rise();
    let mut max_origin = 0f64;
    let mut max_translate = 0f64;
    let mut min_adjacent = f64::INFINITY;
    let mut previous: Option<f64> = None;
    for &t in &refined {
        max_origin = max_origin.max(family.leaf_height(t, 0.0)?.abs());
        let v = family.leaf_height(t, 2.0)?;
        max_translate = max_translate.max((v - (total + (1.0 - t.get()).powi(two_r))).abs());
        if let Some(prev) = previous {
            min_adjacent = min_adjacent.min((prev - v).abs());
        }
        previous = Some(v);
    }
    checks.at_most("origin common point residual (refined)", max_origin, 1e-12);
    checks.at_most(
        "translate closed-form residual (refined)",
        max_translate,
        1e-10,
    );
    checks.at_least("minimum adjacent witness (refined)", min_adjacent, 1e-8);

    Ok(checks.finish("distinctness"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{EvalConfig, SmoothnessOrder};

    #[test]
    fn closed_forms_on_the_coarse_grid() {
        let family = FoliationFamily::new(SmoothnessOrder::new(1).unwrap(), EvalConfig::default());
        let grid = super::super::default_t_grid();
        let report = check_distinctness(&family, &grid).unwrap();
        // t = 1: g_1(2) = g(1); t = 0: g_0(2) = g(1) + 1.
        let total = family.generator().total_rise();
        let r1 = report.rows.iter().find(|r| r.t == 1.0).unwrap();
        assert!((r1.translate_value - total).abs() < 1e-10);
        let r0 = report.rows.iter().find(|r| r.t == 0.0).unwrap();
        assert!((r0.translate_value - (total + 1.0)).abs() < 1e-10);
        // The (0, 1) witness gap is 1.
        let w = report
            .witnesses
            .iter()
            .find(|w| w.t1 == 0.0 && w.t2 == 1.0)
            .unwrap();
        assert!((w.gap - 1.0).abs() < 1e-10);
        assert!((w.gap_exact - 1.0).abs() < 1e-15);
    }
}
