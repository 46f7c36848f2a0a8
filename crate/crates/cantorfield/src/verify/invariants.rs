//! Structural invariant batteries for the core modules: these are the
//! properties the construction is supposed to satisfy identically, sampled
//! at desk scale with deterministic seeds.

use super::{
    cantor_point, default_t_grid, dyadic_unit, random_gap, suite_rng, CheckSet, SuiteResult,
};
use crate::cantor::{cantor_function, classify, gap_bounds, PointClass};
use crate::error::Result;
use crate::foliation::FoliationFamily;
use crate::staircase::psi;
use rand::Rng;

const SAMPLES: usize = 10_000;

/// Closed forms of the derived constants against independent routes:
/// quadrature for the bump integral and the geometric series for the total
/// rise.
pub fn constants_suite(family: &FoliationFamily) -> SuiteResult {
    let gen = family.generator();
    let r = gen.order().get();
    let mut checks = CheckSet::default();

    // Composite Simpson quadrature of the bump, 2000 panels.
    let panels = 2000;
    let h = 1.0 / panels as f64;
    let phi = |t: f64| t.powi((r + 1) as i32) * (1.0 - t).powi((r + 1) as i32);
    let mut quad = phi(0.0) + phi(1.0);
    for i in 1..panels {
        quad += phi(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    quad *= h / 3.0;
    checks.at_most(
        "bump integral vs composite Simpson",
        (gen.bump_integral() - quad).abs(),
        1e-10,
    );

    let consts = gen.constants();
    checks.at_most(
        "alpha * beta identity",
        (consts.alpha * consts.beta - 1.0).abs(),
        1e-15,
    );
    checks.at_most(
        "total rise vs A / (27^r - 2)",
        (gen.rise(1.0) - gen.bump_integral() / (27f64.powi(r as i32) - 2.0)).abs(),
        1e-14,
    );
    checks.at_least("bump sup positive", consts.bump_sup, f64::MIN_POSITIVE);
    checks.at_least(
        "slope Lipschitz positive",
        consts.slope_lipschitz,
        f64::MIN_POSITIVE,
    );
    checks.at_least(
        "flatness bound positive",
        consts.flatness_bound,
        f64::MIN_POSITIVE,
    );
    checks.finish("constants")
}

/// Cantor-set module: gap reconstruction, staircase monotonicity, symmetry,
/// self-similarity and plateau constancy at rounded gap endpoints.
pub fn cantor_suite(family: &FoliationFamily, seed: u64) -> SuiteResult {
    let cfg = family.config();
    let mut rng = suite_rng(seed, 1);
    let mut checks = CheckSet::default();

    // InGap reconstruction within 2 ulp: x = a + local * 3^-n.
    let mut max_ulps = 0f64;
    let mut classified = 0;
    while classified < SAMPLES {
        let x = rng.random_range(0.0..1.0);
        if let PointClass::InGap { gap, local } = classify(x, cfg).expect("finite") {
            classified += 1;
            let (a, _) = gap_bounds(&gap).expect("stage within range");
            let recon = a + local * 3f64.powi(-(gap.stage as i32));
            max_ulps = max_ulps.max((recon - x).abs() / (x * f64::EPSILON));
        }
    }
    checks.at_most("gap reconstruction error (ulp)", max_ulps, 2.0);

    // Monotonicity of the staircase.
    let mut violations = 0u32;
    for _ in 0..SAMPLES {
        let (mut x1, mut x2) = (dyadic_unit(&mut rng), dyadic_unit(&mut rng));
        if x1 > x2 {
            std::mem::swap(&mut x1, &mut x2);
        }
        if cantor_function(x1, cfg) > cantor_function(x2, cfg) {
            violations += 1;
        }
    }
    checks.at_most("staircase monotonicity violations", violations as f64, 0.0);

    // Symmetry c(x) + c(1-x) = 1 on the 53-bit dyadic grid.
    let mut max_sym = 0f64;
    for _ in 0..SAMPLES {
        let x = dyadic_unit(&mut rng);
        max_sym =
            max_sym.max((cantor_function(x, cfg) + cantor_function(1.0 - x, cfg) - 1.0).abs());
    }
    checks.at_most("staircase symmetry residual", max_sym, 1e-12);

    // Self-similarity c(x/3) = c(x)/2.
    let mut max_half = 0f64;
    for _ in 0..SAMPLES {
        let x = dyadic_unit(&mut rng);
        max_half =
            max_half.max((cantor_function(x / 3.0, cfg) - 0.5 * cantor_function(x, cfg)).abs());
    }
    checks.at_most("staircase self-similarity residual", max_half, 1e-12);

    // Exact plateau constancy across rounded gap endpoints, stages 1..=10.
    let mut plateau_violations = 0u32;
    for stage in 1..=10 {
        for _ in 0..30 {
            let gap = random_gap(&mut rng, stage);
            let (a, b) = gap_bounds(&gap).expect("stage within range");
            let mid = 0.5 * (a + b);
            let (ca, cm, cb) = (
                cantor_function(a, cfg),
                cantor_function(mid, cfg),
                cantor_function(b, cfg),
            );
            if ca != cm || cm != cb {
                plateau_violations += 1;
            }
        }
    }
    checks.at_most(
        "gap plateau exact-equality violations",
        plateau_violations as f64,
        0.0,
    );

    checks.finish("cantor_invariants")
}

/// Generator module: self-similarity, symmetry, strict monotonicity, the
/// per-gap integral identity, the fundamental theorem, the rise lower bound
/// and the derivative-decay envelope.
pub fn generator_suite(family: &FoliationFamily, seed: u64) -> Result<SuiteResult> {
    let gen = family.generator();
    let cfg = family.config();
    let r = gen.order().get();
    let ri = r as i32;
    let total = gen.total_rise();
    let a_const = gen.bump_integral();
    let consts = gen.constants();
    let mut rng = suite_rng(seed, 2);
    let mut checks = CheckSet::default();

    // Self-similarity: h(x/3) = 3^(-2r) h(x), g(x/3) = 3^(-3r) g(x).
    let (mut max_h, mut max_g) = (0f64, 0f64);
    for _ in 0..SAMPLES {
        let x = rng.random_range(0.0..1.0);
        max_h = max_h.max((gen.slope(x / 3.0) - 3f64.powi(-2 * ri) * gen.slope(x)).abs());
        max_g = max_g.max((gen.rise(x / 3.0) - 3f64.powi(-3 * ri) * gen.rise(x)).abs());
    }
    checks.at_most("slope self-similarity residual", max_h, 1e-15);
    checks.at_most(
        "rise self-similarity residual (rel. total rise)",
        max_g / total,
        1e-15,
    );

    // Symmetry: h(x) = h(1-x), g(x) + g(1-x) = g(1).
    let (mut max_hs, mut max_gs) = (0f64, 0f64);
    for _ in 0..SAMPLES {
        let x = dyadic_unit(&mut rng);
        max_hs = max_hs.max((gen.slope(x) - gen.slope(1.0 - x)).abs());
        max_gs = max_gs.max((gen.rise(x) + gen.rise(1.0 - x) - total).abs());
    }
    checks.at_most("slope symmetry residual", max_hs, 1e-15);
    checks.at_most(
        "rise symmetry residual (rel. total rise)",
        max_gs / total,
        1e-14,
    );

    // Strict monotonicity for separations of at least 1e-8.
    let mut violations = 0u32;
    for _ in 0..SAMPLES {
        let (mut x1, mut x2): (f64, f64) = (rng.random_range(0.0..1.0), rng.random_range(0.0..1.0));
        if x1 > x2 {
            std::mem::swap(&mut x1, &mut x2);
        }
        if x2 - x1 < 1e-8 {
            x2 = (x1 + 1e-8).min(1.0);
        }
        if gen.rise(x1) >= gen.rise(x2) {
            violations += 1;
        }
    }
    checks.at_most("strict monotonicity violations", violations as f64, 0.0);

    // Per-gap integral: g(b) - g(a) = A 3^(-3rn), via the series and via the
    // exact antiderivative route (the bump integral itself).
    let mut max_gap_integral = 0f64;
    for stage in 1..=8 {
        for _ in 0..40 {
            let gap = random_gap(&mut rng, stage);
            let (a, b) = gap_bounds(&gap)?;
            let exact = a_const * 3f64.powi(-3 * ri * stage as i32);
            max_gap_integral = max_gap_integral.max((gen.rise(b) - gen.rise(a) - exact).abs());
        }
    }
    checks.at_most("per-gap integral residual", max_gap_integral, 1e-15);

    // Fundamental theorem: centred difference of g approximates h.
    let delta = 1e-6;
    let mut max_ft = 0f64;
    let mut found = 0;
    while found < 1000 {
        let x = rng.random_range(0.0..1.0);
        if !classify(x, cfg)?.is_cantor() {
            found += 1;
            let fd = (gen.rise(x + delta) - gen.rise(x - delta)) / (2.0 * delta);
            max_ft = max_ft.max((fd - gen.slope(x)).abs());
        }
    }
    checks.at_most(
        "fundamental theorem residual",
        max_ft,
        10.0 * delta * consts.slope_lipschitz,
    );

    // Rise lower bound: g(x2) - g(x1) >= A 18^(-3r) |x2 - x1|^(3r).
    let k2 = a_const * 18f64.powi(-3 * ri);
    let mut min_ratio = f64::INFINITY;
    for _ in 0..SAMPLES {
        let (mut x1, mut x2) = (rng.random_range(0.0..1.0), rng.random_range(0.0..1.0));
        if x1 > x2 {
            std::mem::swap(&mut x1, &mut x2);
        }
        if x2 - x1 < 1e-9 {
            continue;
        }
        let ratio = (gen.rise(x2) - gen.rise(x1)) / (k2 * (x2 - x1).powi(3 * ri));
        min_ratio = min_ratio.min(ratio);
    }
    checks.at_least("rise lower-bound ratio", min_ratio, 1.0);

    // Derivative decay: sup over stage-n gaps of |h^(j)| <= K 3^(-rn).
    let mut max_decay_ratio = 0f64;
    for stage in 1..=8u32 {
        let gaps = [
            crate::GapId { stage, index: 1 },
            random_gap(&mut rng, stage),
        ];
        for gap in gaps {
            let (a, b) = gap_bounds(&gap)?;
            let bound = consts.bump_sup * 3f64.powi(-ri * stage as i32);
            for i in 1..200 {
                let x = a + (b - a) * i as f64 / 200.0;
                let mut sup = gen.slope(x).abs();
                for j in 1..=r {
                    sup = sup.max(gen.slope_deriv(x, j)?.abs());
                }
                max_decay_ratio = max_decay_ratio.max(sup / bound);
            }
        }
    }
    checks.at_most("derivative decay ratio", max_decay_ratio, 1.0);

    // Non-negativity and the zero set: h = 0 exactly on Cantor points.
    let mut zero_set_violations = 0u32;
    for _ in 0..SAMPLES {
        let x = rng.random_range(0.0..1.0);
        let h = gen.slope(x);
        let in_gap = !classify(x, cfg)?.is_cantor();
        if h < 0.0 || (in_gap && h <= 0.0) || (!in_gap && h != 0.0) {
            zero_set_violations += 1;
        }
    }
    for _ in 0..200 {
        // Rounded triadic points may land just outside C; the equivalence
        // h = 0 <=> classified in C must hold for them all the same.
        let x = cantor_point(&mut rng, 10);
        let in_gap = !classify(x, cfg)?.is_cantor();
        let h = gen.slope(x);
        if (in_gap && h <= 0.0) || (!in_gap && h != 0.0) {
            zero_set_violations += 1;
        }
    }
    checks.at_most(
        "slope sign/zero-set violations",
        zero_set_violations as f64,
        0.0,
    );

    Ok(checks.finish("generator_invariants"))
}

/// Staircase module: monotone, exactly constant on gap images, normalized.
pub fn staircase_suite(family: &FoliationFamily, seed: u64) -> Result<SuiteResult> {
    let gen = family.generator();
    let total = gen.total_rise();
    let mut rng = suite_rng(seed, 3);
    let mut checks = CheckSet::default();

    let mut violations = 0u32;
    for _ in 0..SAMPLES {
        let (mut y1, mut y2) = (
            rng.random_range(-0.2 * total..1.2 * total),
            rng.random_range(-0.2 * total..1.2 * total),
        );
        if y1 > y2 {
            std::mem::swap(&mut y1, &mut y2);
        }
        if psi(gen, y1)? > psi(gen, y2)? {
            violations += 1;
        }
    }
    checks.at_most("staircase monotonicity violations", violations as f64, 0.0);

    // Exact constancy on images of gaps: psi(y1) == psi(y2) bit for bit.
    let mut plateau_violations = 0u32;
    for stage in 1..=8 {
        for _ in 0..20 {
            let gap = random_gap(&mut rng, stage);
            let (a, b) = gap_bounds(&gap)?;
            let (ya, yb) = (gen.rise(a), gen.rise(b));
            let y1 = ya + (yb - ya) * rng.random_range(0.1..0.9);
            let y2 = ya + (yb - ya) * rng.random_range(0.1..0.9);
            if psi(gen, y1)? != psi(gen, y2)? {
                plateau_violations += 1;
            }
        }
    }
    checks.at_most(
        "gap-image plateau exact-equality violations",
        plateau_violations as f64,
        0.0,
    );

    checks.at_most("psi(0)", psi(gen, 0.0)?.abs(), 0.0);
    checks.at_most("psi(total rise) - 1", (psi(gen, total)? - 1.0).abs(), 0.0);
    Ok(checks.finish("staircase_invariants"))
}

/// Foliation module: inversion round trips, the t = 0 degeneration, the
/// contraction and transport identities, flatness at the transported Cantor
/// set, leaf tangency to the field, the off-Cantor local form and the
/// monotone band in t.
pub fn foliation_suite(family: &FoliationFamily, seed: u64) -> Result<SuiteResult> {
    let gen = family.generator();
    let cfg = family.config();
    let r = gen.order().get();
    let total = gen.total_rise();
    let t_grid = default_t_grid();
    let mut rng = suite_rng(seed, 4);
    let mut checks = CheckSet::default();

    // Round trip g_t(f_t(y)) = y for y in [-1, g(1) + 1], every grid t.
    let mut max_rt = 0f64;
    for _ in 0..SAMPLES {
        let y = rng.random_range(-1.0..total + 1.0);
        for &t in &t_grid {
            let x = family.leaf_abscissa(t, y)?;
            max_rt = max_rt.max((family.leaf_height(t, x)? - y).abs());
        }
    }
    checks.at_most("round-trip residual", max_rt, 2.0 * cfg.tolerance);

    // t = 0 recovers the rise.
    let mut max_t0 = 0f64;
    let t0 = t_grid[0];
    for _ in 0..SAMPLES {
        let x = rng.random_range(-1.0..3.0);
        max_t0 = max_t0.max((family.leaf_height(t0, x)? - gen.rise(x)).abs());
    }
    checks.at_most("t = 0 degeneration residual", max_t0, 2.0 * cfg.tolerance);

    // Contraction |x - x0| <= |z - z0| and the transport identity
    // |g_t(z) - g_t(z0)| = |g(x) - g(x0)| for z = f_t(g(x)).
    let (mut max_contraction, mut max_transport) = (f64::NEG_INFINITY, 0f64);
    for i in 0..SAMPLES {
        let t = t_grid[i % t_grid.len()];
        let x = rng.random_range(0.0..1.0);
        let x0 = rng.random_range(0.0..1.0);
        let z = family.shear(t, x)?;
        let z0 = family.shear(t, x0)?;
        max_contraction = max_contraction.max((x - x0).abs() - (z - z0).abs());
        let transported = (family.leaf_height(t, z)? - family.leaf_height(t, z0)?).abs();
        max_transport = max_transport.max((transported - (gen.rise(x) - gen.rise(x0)).abs()).abs());
    }
    checks.at_most("contraction excess", max_contraction, 1e-12);
    checks.at_most(
        "transport identity residual",
        max_transport,
        4.0 * cfg.tolerance,
    );

    // Flatness at the transported Cantor set: |g_t(z0 + d) - g_t(z0)| <=
    // 2 B d^(r+1) for offsets d down to 1e-6.
    let flatness = 2.0 * gen.constants().flatness_bound;
    let mut max_flat_ratio = 0f64;
    let mut anchors = vec![0.0, 1.0];
    for _ in 0..6 {
        anchors.push(cantor_point(&mut rng, 12));
    }
    for &t in &t_grid {
        for &x0 in &anchors {
            let z0 = family.shear(t, x0)?;
            let base = family.leaf_height(t, z0)?;
            for k in 2..=6 {
                let d = 10f64.powi(-k);
                let spread = (family.leaf_height(t, z0 + d)? - base).abs();
                max_flat_ratio = max_flat_ratio.max(spread / (flatness * d.powi(r as i32 + 1)));
            }
        }
    }
    checks.at_most(
        "flatness ratio at transported Cantor points",
        max_flat_ratio,
        1.0,
    );

    // Tangency: centred difference of the leaf matches the field.
    let delta = 1e-7;
    let mut max_tangency = 0f64;
    for &t in &t_grid {
        for _ in 0..200 {
            let z = rng.random_range(-0.5..2.5);
            let fd = (family.leaf_height(t, z + delta)? - family.leaf_height(t, z - delta)?)
                / (2.0 * delta);
            let slope = family.field_at(z, family.leaf_height(t, z)?)?.dy;
            max_tangency = max_tangency.max((fd - slope).abs());
        }
    }
    checks.at_most("leaf tangency residual", max_tangency, 1e-4);

    // Off-Cantor local form: around a mid-gap pullback the leaf is a
    // translate of the base leaf, g_t(z') = g(z' - t psi(g_t(z'))).
    let mut max_local = 0f64;
    for stage in 1..=6 {
        for _ in 0..5 {
            let gap = random_gap(&mut rng, stage);
            let (a, b) = gap_bounds(&gap)?;
            let u0 = 0.5 * (a + b);
            for &t in &t_grid {
                let z = family.leaf_abscissa(t, gen.rise(u0))?;
                let shift = t.get() * cantor_function(u0, cfg);
                for offset in [-1e-5, -3e-6, 3e-6, 1e-5] {
                    let zp = z + offset;
                    max_local =
                        max_local.max((family.leaf_height(t, zp)? - gen.rise(zp - shift)).abs());
                }
            }
        }
    }
    checks.at_most(
        "off-Cantor local-form residual",
        max_local,
        2.0 * cfg.tolerance,
    );

    // Monotone band: g_1 <= g_t <= g_0 for x >= 0.
    let (t_low, t_high) = (t_grid[t_grid.len() - 1], t_grid[0]);
    let mut max_band = f64::NEG_INFINITY;
    for _ in 0..1000 {
        let x = rng.random_range(0.0..3.0);
        let (lo, hi) = (
            family.leaf_height(t_low, x)?,
            family.leaf_height(t_high, x)?,
        );
        for &t in &t_grid {
            let y = family.leaf_height(t, x)?;
            max_band = max_band.max(lo - y).max(y - hi);
        }
    }
    checks.at_most("monotone band violation", max_band, 2.0 * cfg.tolerance);

    Ok(checks.finish("foliation_invariants"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{EvalConfig, SmoothnessOrder};

    fn family() -> FoliationFamily {
        FoliationFamily::new(SmoothnessOrder::new(1).unwrap(), EvalConfig::default())
    }

    #[test]
    fn constants_suite_passes() {
        let s = constants_suite(&family());
        assert!(s.pass, "{s:?}");
    }

    #[test]
    fn cantor_suite_passes() {
        let s = cantor_suite(&family(), 42);
        assert!(s.pass, "{s:?}");
    }

    #[test]
    fn generator_suite_passes() {
        let s = generator_suite(&family(), 42).unwrap();
        assert!(s.pass, "{s:?}");
    }

    #[test]
    fn staircase_suite_passes() {
        let s = staircase_suite(&family(), 42).unwrap();
        assert!(s.pass, "{s:?}");
    }

    #[test]
    fn foliation_suite_passes() {
        let s = foliation_suite(&family(), 42).unwrap();
        assert!(s.pass, "{s:?}");
    }
}
