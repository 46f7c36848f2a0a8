//! Quantitative verification suites.
//!
//! Each suite samples deterministically from a ChaCha stream derived from the
//! master seed, measures the quantities its checks need, and records one
//! [`Check`] per bound. Reports are byte-deterministic for a fixed
//! (order, config, seed) triple; wall-clock timings are kept out of the
//! serialized body for that reason and reported separately.

mod distinctness;
mod funnel;
mod holder;
mod invariants;
mod tangency;

pub use distinctness::check_distinctness;
pub use funnel::{integrate, ode_funnel, FunnelReport, IntegratorKind, Landing};
pub use holder::{estimate_holder, BlowupRow, HolderReport};
pub use invariants::{
    cantor_suite, constants_suite, foliation_suite, generator_suite, staircase_suite,
};
pub use tangency::check_tangency_flatness;

use crate::config::{EvalConfig, SmoothnessOrder};
use crate::error::{Error, Result};
use crate::foliation::{FoliationFamily, FoliationParam};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

/// One measured bound: `measured` compared against `bound` under `relation`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Check {
    pub label: String,
    pub measured: f64,
    pub bound: f64,
    pub relation: Relation,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    AtLeast,
}

/// Accumulates checks for one suite.
#[derive(Debug, Default)]
pub(crate) struct CheckSet {
    checks: Vec<Check>,
}

impl CheckSet {
    pub(crate) fn at_most(&mut self, label: impl Into<String>, measured: f64, bound: f64) {
        let pass = measured.is_finite() && measured <= bound;
        self.checks.push(Check {
            label: label.into(),
            measured,
            bound,
            relation: Relation::AtMost,
            pass,
        });
    }

    pub(crate) fn at_least(&mut self, label: impl Into<String>, measured: f64, bound: f64) {
        let pass = measured.is_finite() && measured >= bound;
        self.checks.push(Check {
            label: label.into(),
            measured,
            bound,
            relation: Relation::AtLeast,
            pass,
        });
    }

    pub(crate) fn finish(self, name: impl Into<String>) -> SuiteResult {
        let pass = self.checks.iter().all(|c| c.pass);
        SuiteResult {
            name: name.into(),
            pass,
            checks: self.checks,
        }
    }
}

/// Outcome of one verification suite.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl SuiteResult {
    /// Measured value of the check with the given label, when present.
    pub fn measured(&self, label: &str) -> Option<f64> {
        self.checks
            .iter()
            .find(|c| c.label == label)
            .map(|c| c.measured)
    }
}

/// Aggregated verification outcome. Serialization order is fixed by field
/// order; `timings_ms` is deliberately not serialized so that identical
/// (order, config, seed) runs produce byte-identical documents.
#[derive(Debug, Clone, serde::Serialize)]
pub struct VerificationReport {
    pub version: String,
    pub order: u32,
    pub config: EvalConfig,
    pub seed: u64,
    pub pass: bool,
    pub suites: Vec<SuiteResult>,
    #[serde(skip)]
    pub timings_ms: Vec<(String, u128)>,
}

impl VerificationReport {
    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }

    /// The serialized report body (pretty JSON with a trailing newline).
    pub fn to_document(&self) -> String {
        let mut body = serde_json::to_string_pretty(self).expect("report serializes");
        body.push('\n');
        body
    }
}

/// Which suites to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteSelector {
    All,
    Holder,
    Tangency,
    Distinctness,
    Ode,
    Invariants,
}

impl std::str::FromStr for SuiteSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(SuiteSelector::All),
            "holder" => Ok(SuiteSelector::Holder),
            "tangency" => Ok(SuiteSelector::Tangency),
            "distinctness" => Ok(SuiteSelector::Distinctness),
            "ode" => Ok(SuiteSelector::Ode),
            "invariants" => Ok(SuiteSelector::Invariants),
            other => Err(Error::domain(format!(
                "unknown suite '{other}' (expected all, holder, tangency, distinctness, ode or invariants)"
            ))),
        }
    }
}

/// Default foliation parameters exercised by the suites.
pub(crate) fn default_t_grid() -> Vec<FoliationParam> {
    [0.0, 0.25, 0.5, 0.75, 1.0]
        .iter()
        .map(|&t| FoliationParam::new(t).expect("grid values lie in [0, 1]"))
        .collect()
}

/// Deterministic per-suite sampler: suites draw from independent streams of
/// the master seed so adding a suite never reshuffles another one.
pub(crate) fn suite_rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Uniform draw on the 53-bit dyadic grid of [0, 1): these values mirror
/// exactly under x -> 1 - x, which the symmetry checks rely on.
pub(crate) fn dyadic_unit(rng: &mut ChaCha8Rng) -> f64 {
    use rand::Rng;
    rng.random_range(0u64..(1u64 << 53)) as f64 * 2f64.powi(-53)
}

/// Random point of the Cantor set: a stage-`depth` triadic with digits in
/// {0, 2}, rounded once to f64.
pub(crate) fn cantor_point(rng: &mut ChaCha8Rng, depth: u32) -> f64 {
    use rand::Rng;
    let mut k: u64 = 0;
    for _ in 0..depth {
        k = 3 * k + 2 * u64::from(rng.random::<bool>());
    }
    k as f64 / 3u64.pow(depth) as f64
}

/// Random gap at the given stage: digits of the prefix drawn from {0, 2}.
pub(crate) fn random_gap(rng: &mut ChaCha8Rng, stage: u32) -> crate::GapId {
    use rand::Rng;
    let mut k: u64 = 0;
    for _ in 0..stage - 1 {
        k = 3 * k + 2 * u64::from(rng.random::<bool>());
    }
    crate::GapId {
        stage,
        index: 3 * k + 1,
    }
}

/// Ordinary least squares line fit on (x, y) pairs: (slope, intercept, rms).
pub(crate) fn fit_line(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    debug_assert!(points.len() >= 2);
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    let slope = if denom.abs() < 1e-12 {
        0.0
    } else {
        (n * sxy - sx * sy) / denom
    };
    let intercept = (sy - slope * sx) / n;
    let ss_res: f64 = points
        .iter()
        .map(|&(x, y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum();
    (slope, intercept, (ss_res / n).sqrt())
}

/// Runs the selected suites and aggregates the outcome. A parameter grid may
/// be supplied to override the default {0, 0.25, 0.5, 0.75, 1} in the
/// distinctness, tangency and funnel suites.
pub fn run_suites(
    order: SmoothnessOrder,
    cfg: EvalConfig,
    seed: u64,
    selector: SuiteSelector,
    t_grid: Option<&[FoliationParam]>,
) -> Result<VerificationReport> {
    let family = FoliationFamily::new(order, cfg);
    let grid: Vec<FoliationParam> = t_grid.map(<[_]>::to_vec).unwrap_or_else(default_t_grid);
    let mut suites: Vec<SuiteResult> = Vec::new();
    let mut timings: Vec<(String, u128)> = Vec::new();
    let run = |name: &str,
               suites: &mut Vec<SuiteResult>,
               timings: &mut Vec<(String, u128)>,
               f: &mut dyn FnMut() -> Result<SuiteResult>|
     -> Result<()> {
        let started = Instant::now();
        let result = f()?;
        timings.push((name.to_string(), started.elapsed().as_millis()));
        suites.push(result);
        Ok(())
    };

    if matches!(selector, SuiteSelector::All | SuiteSelector::Invariants) {
        run("constants", &mut suites, &mut timings, &mut || {
            Ok(constants_suite(&family))
        })?;
        run("cantor_invariants", &mut suites, &mut timings, &mut || {
            Ok(cantor_suite(&family, seed))
        })?;
        run(
            "generator_invariants",
            &mut suites,
            &mut timings,
            &mut || generator_suite(&family, seed),
        )?;
        run(
            "staircase_invariants",
            &mut suites,
            &mut timings,
            &mut || staircase_suite(&family, seed),
        )?;
        run(
            "foliation_invariants",
            &mut suites,
            &mut timings,
            &mut || foliation_suite(&family, seed),
        )?;
    }
    if matches!(selector, SuiteSelector::All | SuiteSelector::Holder) {
        run("holder", &mut suites, &mut timings, &mut || {
            holder::holder_suite(&family, seed)
        })?;
    }
    if matches!(selector, SuiteSelector::All | SuiteSelector::Distinctness) {
        run("distinctness", &mut suites, &mut timings, &mut || {
            distinctness::distinctness_suite(&family, &grid)
        })?;
    }
    if matches!(selector, SuiteSelector::All | SuiteSelector::Tangency) {
        run("tangency_flatness", &mut suites, &mut timings, &mut || {
            tangency::tangency_suite(&family, &grid, seed)
        })?;
    }
    if matches!(selector, SuiteSelector::All | SuiteSelector::Ode) {
        run("ode_funnel", &mut suites, &mut timings, &mut || {
            funnel::funnel_suite(&family, &grid)
        })?;
    }

    let pass = suites.iter().all(|s| s.pass);
    Ok(VerificationReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        order: order.get(),
        config: cfg,
        seed,
        pass,
        suites,
        timings_ms: timings,
    })
}

/// Runs every suite: module invariants plus the Holder, distinctness,
/// tangency/flatness and ODE-funnel batteries.
pub fn run_all(order: SmoothnessOrder, cfg: EvalConfig, seed: u64) -> Result<VerificationReport> {
    run_suites(order, cfg, seed, SuiteSelector::All, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_recovers_a_line() {
        let pts: Vec<(f64, f64)> = (0..10).map(|i| (i as f64, 3.0 * i as f64 - 2.0)).collect();
        let (slope, intercept, rms) = fit_line(&pts);
        assert!((slope - 3.0).abs() < 1e-12);
        assert!((intercept + 2.0).abs() < 1e-12);
        assert!(rms < 1e-12);
    }

    #[test]
    fn selectors_parse() {
        assert_eq!("all".parse::<SuiteSelector>().unwrap(), SuiteSelector::All);
        assert_eq!("ode".parse::<SuiteSelector>().unwrap(), SuiteSelector::Ode);
        assert!("bogus".parse::<SuiteSelector>().is_err());
    }

    #[test]
    fn check_set_aggregates() {
        let mut set = CheckSet::default();
        set.at_most("a", 1.0, 2.0);
        set.at_least("b", 3.0, 2.5);
        let suite = set.finish("demo");
        assert!(suite.pass);
        assert_eq!(suite.measured("a"), Some(1.0));
        let mut set = CheckSet::default();
        set.at_most("bad", f64::NAN, 1.0);
        assert!(!set.finish("demo").pass);
    }

    #[test]
    fn dyadic_values_mirror_exactly() {
        let mut rng = suite_rng(7, 1);
        for _ in 0..100 {
            let x = dyadic_unit(&mut rng);
            assert_eq!(1.0 - (1.0 - x), x);
        }
    }

    #[test]
    fn random_gaps_are_valid() {
        let mut rng = suite_rng(11, 2);
        for stage in 1..=10 {
            for _ in 0..20 {
                let gap = random_gap(&mut rng, stage);
                assert!(crate::GapId::new(gap.stage, gap.index).is_ok());
            }
        }
    }
}
