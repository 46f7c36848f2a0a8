//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! with the measured quantities. Expected values are checked against
//! independent oracles computed here (quadrature, factorials, geometric
//! series), not against the code paths under test.

use cantorfield::foliation::{FoliationFamily, FoliationParam};
use cantorfield::generator::Generator;
use cantorfield::verify::{
    check_tangency_flatness, estimate_holder, generator_suite, ode_funnel, IntegratorKind,
};
use cantorfield::{EvalConfig, SmoothnessOrder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn family(r: u32) -> FoliationFamily {
    FoliationFamily::new(SmoothnessOrder::new(r).unwrap(), EvalConfig::default())
}

fn generator(r: u32) -> Generator {
    Generator::new(SmoothnessOrder::new(r).unwrap(), EvalConfig::default())
}

fn t_param(t: f64) -> FoliationParam {
    FoliationParam::new(t).unwrap()
}

/// Composite Simpson quadrature of the bump t^(r+1) (1-t)^(r+1) over [0, 1].
fn simpson_bump_oracle(r: u32, panels: usize) -> f64 {
    assert!(panels.is_multiple_of(2));
    let phi = |t: f64| t.powi((r + 1) as i32) * (1.0 - t).powi((r + 1) as i32);
    let h = 1.0 / panels as f64;
    let mut acc = phi(0.0) + phi(1.0);
    for i in 1..panels {
        acc += phi(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

fn factorial_oracle(n: u32) -> f64 {
    (1..=n as u64).map(|k| k as f64).product()
}

/// A = ((r+1)!)^2 / (2r+3)! from plain factorials.
fn bump_integral_oracle(r: u32) -> f64 {
    factorial_oracle(r + 1).powi(2) / factorial_oracle(2 * r + 3)
}

/// g(1) = A sum_{n>=1} 2^(n-1) 3^(-3rn), summed term by term until the terms
/// vanish.
fn total_rise_series_oracle(r: u32) -> f64 {
    let a = bump_integral_oracle(r);
    let q = 3f64.powi(-(3 * r as i32));
    let mut sum = 0.0;
    let mut term = a * q; // n = 1: one gap of mass A q
    while term > 0.0 {
        sum += term;
        term *= 2.0 * q;
    }
    sum
}

#[test]
fn criterion_01_bump_integral_vs_quadrature() {
    let started = Instant::now();
    let mut worst = 0f64;
    for r in 1..=3 {
        let closed = generator(r).bump_integral();
        let quad = simpson_bump_oracle(r, 2000);
        worst = worst.max((closed - quad).abs());
        assert!(
            (closed - quad).abs() <= 1e-10,
            "r = {r}: closed {closed:e} vs quadrature {quad:e}"
        );
    }
    let elapsed = started.elapsed();
    println!(
        "acceptance 01 (bump integral vs Simpson, r = 1..3): PASS \
         (max |diff| = {worst:e}, {elapsed:.2?})"
    );
    assert!(elapsed.as_secs_f64() < 1.0, "runtime bound: {elapsed:.2?}");
}

#[test]
fn criterion_02_total_rise_closed_form() {
    let started = Instant::now();
    let mut worst = 0f64;
    for r in 1..=2 {
        let rise = generator(r).rise(1.0);
        let closed = bump_integral_oracle(r) / (27f64.powi(r as i32) - 2.0);
        let series = total_rise_series_oracle(r);
        worst = worst.max((rise - closed).abs()).max((rise - series).abs());
        assert!(
            (rise - closed).abs() <= 1e-14,
            "r = {r}: {rise:e} vs {closed:e}"
        );
        assert!(
            (rise - series).abs() <= 1e-14,
            "r = {r}: {rise:e} vs series {series:e}"
        );
    }
    assert!(
        (generator(1).rise(1.0) - 1.0 / 750.0).abs() <= 1e-14,
        "g(1) at r = 1 must equal 1/750"
    );
    let elapsed = started.elapsed();
    println!(
        "acceptance 02 (total rise vs A/(27^r - 2), r = 1..2): PASS \
         (max |diff| = {worst:e}, {elapsed:.2?})"
    );
    assert!(elapsed.as_secs_f64() < 1.0, "runtime bound: {elapsed:.2?}");
}

#[test]
fn criterion_03_structural_invariants() {
    let started = Instant::now();
    let suite = generator_suite(&family(1), 42).expect("suite runs");
    for check in &suite.checks {
        assert!(
            check.pass,
            "generator invariant failed: {} measured {:e} bound {:e}",
            check.label, check.measured, check.bound
        );
    }
    let elapsed = started.elapsed();
    println!(
        "acceptance 03 (structural invariants of g and h, {} checks): PASS ({elapsed:.2?})",
        suite.checks.len()
    );
    assert!(elapsed.as_secs_f64() < 10.0, "runtime bound: {elapsed:.2?}");
}

#[test]
fn criterion_04_inversion_round_trips() {
    let started = Instant::now();
    let fam = family(1);
    let gen = fam.generator();
    let total = gen.total_rise();
    let t_grid: Vec<FoliationParam> = [0.0, 0.25, 0.5, 0.75, 1.0]
        .iter()
        .map(|&t| t_param(t))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (mut worst_gen, mut worst_leaf) = (0f64, 0f64);
    for _ in 0..10_000 {
        let y = rng.random_range(-1.0..total + 1.0);
        worst_gen = worst_gen.max((gen.rise(gen.rise_inverse(y).unwrap()) - y).abs());
        for &t in &t_grid {
            let x = fam.leaf_abscissa(t, y).unwrap();
            worst_leaf = worst_leaf.max((fam.leaf_height(t, x).unwrap() - y).abs());
        }
    }
    assert!(worst_gen <= 1e-12, "rise round trip: {worst_gen:e}");
    assert!(worst_leaf <= 2e-12, "leaf round trip: {worst_leaf:e}");
    let elapsed = started.elapsed();
    println!(
        "acceptance 04 (inversion round trips): PASS \
         (rise {worst_gen:e}, leaves {worst_leaf:e}, {elapsed:.2?})"
    );
    assert!(elapsed.as_secs_f64() < 10.0, "runtime bound: {elapsed:.2?}");
}

#[test]
fn criterion_05_common_point_and_distinctness() {
    let started = Instant::now();
    let fam = family(1);
    let total = fam.generator().total_rise();
    let grid: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).collect();
    let mut heights = Vec::with_capacity(grid.len());
    let (mut worst_origin, mut worst_translate) = (0f64, 0f64);
    for &t in &grid {
        let tp = t_param(t);
        worst_origin = worst_origin.max(fam.leaf_height(tp, 0.0).unwrap().abs());
        let v = fam.leaf_height(tp, 2.0).unwrap();
        worst_translate = worst_translate.max((v - (total + (1.0 - t) * (1.0 - t))).abs());
        heights.push(v);
    }
    assert!(worst_origin <= 1e-12, "origin: {worst_origin:e}");
    assert!(worst_translate <= 1e-10, "translate: {worst_translate:e}");
    let mut worst_witness = 0f64;
    for i in 0..grid.len() {
        for j in (i + 1)..grid.len() {
            let exact = ((1.0 - grid[i]).powi(2) - (1.0 - grid[j]).powi(2)).abs();
            worst_witness = worst_witness.max(((heights[i] - heights[j]).abs() - exact).abs());
        }
    }
    assert!(worst_witness <= 1e-10, "witness: {worst_witness:e}");
    let elapsed = started.elapsed();
    println!(
        "acceptance 05 (common point and distinctness, 101 parameters): PASS \
         (origin {worst_origin:e}, translate {worst_translate:e}, witness {worst_witness:e}, \
         {elapsed:.2?})"
    );
    assert!(elapsed.as_secs_f64() < 5.0, "runtime bound: {elapsed:.2?}");
}

#[test]
fn criterion_06_tangency_and_flatness() {
    let started = Instant::now();
    let fam = family(1);
    let t_grid: Vec<FoliationParam> = [0.0, 0.25, 0.5, 0.75, 1.0]
        .iter()
        .map(|&t| t_param(t))
        .collect();
    let report = check_tangency_flatness(&fam, &t_grid, 42).expect("report");
    assert!(
        report.max_residual <= 1e-4,
        "ODE residual: {:e}",
        report.max_residual
    );
    let min_order = report
        .fits
        .iter()
        .filter(|f| f.on_cantor_image)
        .map(|f| f.order)
        .fold(f64::INFINITY, f64::min);
    assert!(min_order >= 1.9, "contact order: {min_order}");
    let elapsed = started.elapsed();
    println!(
        "acceptance 06 (tangency and flatness): PASS \
         (residual {:e}, min contact order {min_order:.3}, {elapsed:.2?})",
        report.max_residual
    );
    assert!(elapsed.as_secs_f64() < 30.0, "runtime bound: {elapsed:.2?}");
}

#[test]
fn criterion_07_holder_regime() {
    let started = Instant::now();
    let gen = generator(1);
    let report = estimate_holder(&gen, 10_000, 42).expect("holder report");
    assert!(
        report.fitted_alpha >= 1.0 / 3.0 - 0.05 && report.fitted_alpha <= 1.0,
        "alpha: {}",
        report.fitted_alpha
    );
    // Structured blow-up quotients vs the closed form (2^(-2r-1)/A) 3^(rn),
    // with A from the factorial oracle.
    let a = bump_integral_oracle(1);
    let mut worst_rel = 0f64;
    for row in &report.blowup_table {
        let exact = 2f64.powi(-3) / a * 3f64.powi(row.stage as i32);
        worst_rel = worst_rel.max((row.quotient - exact).abs() / exact);
    }
    assert!(worst_rel <= 0.05, "blow-up relative error: {worst_rel:e}");
    for pair in report.blowup_table.windows(2) {
        let growth = pair[1].quotient / pair[0].quotient;
        assert!(
            (0.8 * 3.0..=1.2 * 3.0).contains(&growth),
            "growth between stages {} and {}: {growth}",
            pair[0].stage,
            pair[1].stage
        );
    }
    let elapsed = started.elapsed();
    println!(
        "acceptance 07 (Holder regime): PASS (alpha {:.4}, blow-up rel. err {worst_rel:e}, \
         growth 3 +/- 20%, {elapsed:.2?})",
        report.fitted_alpha
    );
    assert!(elapsed.as_secs_f64() < 30.0, "runtime bound: {elapsed:.2?}");
}

#[test]
fn criterion_08_ode_funnel() {
    let started = Instant::now();
    let fam = family(1);
    let t_grid: Vec<FoliationParam> = [0.0, 0.25, 0.5, 0.75, 1.0]
        .iter()
        .map(|&t| t_param(t))
        .collect();
    let runs = [
        (IntegratorKind::Euler, 1e-3),
        (IntegratorKind::RungeKutta4, 1e-2),
    ];
    let mut landings = Vec::new();
    for (method, step) in runs {
        let report = ode_funnel(&fam, method, step, 2.0, &t_grid).expect("funnel");
        assert!(
            (report.band_low - 1.0 / 750.0).abs() <= 1e-10,
            "band low: {:e}",
            report.band_low
        );
        assert!(
            (report.band_high - (1.0 / 750.0 + 1.0)).abs() <= 1e-10,
            "band high: {:e}",
            report.band_high
        );
        for &(t, residual) in &report.leaf_residuals {
            assert!(residual <= 1e-4, "leaf t = {t} residual {residual:e}");
        }
        let landing = &report.landings[0];
        assert!(
            landing.inside_inflated_band,
            "{method} landing {:e} outside band inflated by {:e}",
            landing.landing, landing.slack
        );
        landings.push(format!("{method}@{step:e} -> {:e}", landing.landing));
    }
    let elapsed = started.elapsed();
    println!(
        "acceptance 08 (ODE funnel at x_end = 2): PASS (band [1/750, 1/750 + 1], \
         landings {}, {elapsed:.2?})",
        landings.join(", ")
    );
    assert!(elapsed.as_secs_f64() < 10.0, "runtime bound: {elapsed:.2?}");
}

#[test]
fn criterion_09_contraction_and_transport() {
    let started = Instant::now();
    let fam = family(1);
    let gen = fam.generator();
    let tolerance = fam.config().tolerance;
    let t_grid: Vec<FoliationParam> = [0.0, 0.25, 0.5, 0.75, 1.0]
        .iter()
        .map(|&t| t_param(t))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (mut worst_contraction, mut worst_transport) = (f64::NEG_INFINITY, 0f64);
    for i in 0..10_000 {
        let t = t_grid[i % t_grid.len()];
        let x: f64 = rng.random_range(0.0..1.0);
        let x0: f64 = rng.random_range(0.0..1.0);
        let z = fam.shear(t, x).unwrap();
        let z0 = fam.shear(t, x0).unwrap();
        worst_contraction = worst_contraction.max((x - x0).abs() - (z - z0).abs());
        let transported = (fam.leaf_height(t, z).unwrap() - fam.leaf_height(t, z0).unwrap()).abs();
        worst_transport =
            worst_transport.max((transported - (gen.rise(x) - gen.rise(x0)).abs()).abs());
    }
    assert!(
        worst_contraction <= 1e-12,
        "contraction excess: {worst_contraction:e}"
    );
    assert!(
        worst_transport <= 4.0 * tolerance,
        "transport: {worst_transport:e}"
    );
    let elapsed = started.elapsed();
    println!(
        "acceptance 09 (contraction and transport identities): PASS \
         (excess {worst_contraction:e}, transport {worst_transport:e}, {elapsed:.2?})"
    );
    assert!(elapsed.as_secs_f64() < 10.0, "runtime bound: {elapsed:.2?}");
}

#[test]
fn criterion_10_full_verification_determinism() {
    let started = Instant::now();
    let bin = env!("CARGO_BIN_EXE_cantorfield");
    let dir = std::env::temp_dir().join("cantorfield_acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let mut reports = Vec::new();
    for run in 0..2 {
        let path = dir.join(format!("report_{run}.json"));
        let output = std::process::Command::new(bin)
            .args([
                "verify",
                "--r",
                "1",
                "--suite",
                "all",
                "--seed",
                "42",
                "--out",
                path.to_str().unwrap(),
            ])
            .output()
            .expect("binary runs");
        assert!(
            output.status.success(),
            "verify exited with {:?}: {}",
            output.status.code(),
            String::from_utf8_lossy(&output.stdout)
        );
        reports.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(
        reports[0], reports[1],
        "report bodies must be byte-identical"
    );
    let elapsed = started.elapsed();
    println!(
        "acceptance 10 (full verify, determinism): PASS \
         (two byte-identical {}-byte reports, {elapsed:.2?})",
        reports[0].len()
    );
    assert!(
        elapsed.as_secs_f64() < 120.0,
        "runtime bound: {elapsed:.2?}"
    );
}
