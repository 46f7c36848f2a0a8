//! The base-leaf generator: bump profile, slope function, accumulated rise
//! and its monotone inverse, plus the derived constants of the construction.
//!
//! For smoothness order r, the bump is phi(t) = t^(r+1) (1-t)^(r+1) on
//! [0, 1]. The slope function vanishes on the Cantor set and equals
//! 3^(-2rn) phi(3^n (x - a)) on a stage-n gap (a, b); its integral, the
//! rise g, is evaluated in closed form as the gap-mass series
//!
//!   g(x) = A * sum_n 3^(-3rn) * count_gaps_left(x, n)  +  partial gap term
//!
//! with A = integral of phi, never by quadrature. Outside [0, 1] the rise
//! extends as -x^(2r) on the left and g(1) + (x-1)^(2r) on the right, and the
//! slope is the derivative of that extension.

use crate::cantor::{classify, PointClass, StageCounts};
use crate::config::{EvalConfig, SmoothnessOrder};
use crate::error::{Error, Result};

/// Bump profile phi(t) = t^(r+1) (1-t)^(r+1) expanded with exact integer
/// coefficients, together with its derivatives and antiderivative.
///
/// Coefficient of t^(r+1+m) is (-1)^m binom(r+1, m); all coefficients and
/// their falling-factorial derivative scalings stay far inside the exact
/// integer range of f64 for r <= 6.
#[derive(Debug, Clone)]
struct BumpPoly {
    order: u32,
    /// derivs[j][m] = coefficient of t^(r+1+m-j) in phi^(j), for j = 0..=r.
    derivs: Vec<Vec<f64>>,
    /// Antiderivative coefficients: integral_0^s phi = sum_m anti[m] s^(r+2+m).
    anti: Vec<f64>,
    /// integral of phi over [0, 1], from exact factorials.
    integral: f64,
}

impl BumpPoly {
    fn new(order: SmoothnessOrder) -> Self {
        let r = order.get();
        let n = (r + 1) as i64;
        // Base coefficients c_m = (-1)^m binom(r+1, m), m = 0..=r+1.
        let mut binom = vec![0i64; (r + 2) as usize];
        binom[0] = 1;
        for m in 1..=(r + 1) as usize {
            binom[m] = binom[m - 1] * (n - (m as i64 - 1)) / m as i64;
        }
        let base: Vec<i64> = binom
            .iter()
            .enumerate()
            .map(|(m, &b)| if m % 2 == 0 { b } else { -b })
            .collect();

        let mut derivs = Vec::with_capacity((r + 1) as usize);
        let mut current: Vec<(i64, i64)> = base
            .iter()
            .enumerate()
            .map(|(m, &c)| (c, (r + 1 + m as u32) as i64))
            .collect();
        for _ in 0..=r {
            derivs.push(current.iter().map(|&(c, _)| c as f64).collect());
            current = current.iter().map(|&(c, e)| (c * e, e - 1)).collect();
        }
        let anti: Vec<f64> = base
            .iter()
            .enumerate()
            .map(|(m, &c)| c as f64 / (r + 2 + m as u32) as f64)
            .collect();
        BumpPoly {
            order: r,
            derivs,
            anti,
            integral: exact_bump_integral(r),
        }
    }

    /// phi^(j)(t) for 0 <= j <= r.
    ///
    /// The bump itself evaluates in factored form t^(r+1) (1-t)^(r+1): the
    /// expanded coefficients cancel catastrophically as t -> 1 and would
    /// return 0 (or -eps) where the true value is a positive ~(1-t)^(r+1),
    /// breaking the sign contract of the slope. 1 - t is exact for t >= 1/2.
    /// Derivatives keep the expanded Horner form; their endpoint scale is not
    /// sign-critical.
    fn deriv(&self, t: f64, j: u32) -> f64 {
        let p = (self.order + 1) as i32;
        if j == 0 {
            return t.powi(p) * (1.0 - t).powi(p);
        }
        let coeffs = &self.derivs[j as usize];
        let low_power = self.order + 1 - j;
        let mut acc = 0.0;
        for &c in coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc * t.powi(low_power as i32)
    }

    /// integral_0^s phi(u) du, exact polynomial antiderivative.
    ///
    /// The alternating coefficients cancel heavily near s = 1, so the upper
    /// half evaluates through the bump symmetry as A - integral_0^(1-s);
    /// 1 - s is exact there.
    fn antideriv(&self, s: f64) -> f64 {
        if s > 0.5 {
            return self.integral - self.antideriv_raw(1.0 - s);
        }
        self.antideriv_raw(s)
    }

    fn antideriv_raw(&self, s: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.anti.iter().rev() {
            acc = acc * s + c;
        }
        acc * s.powi((self.order + 2) as i32)
    }
}

/// Kahan compensated accumulator for the gap-mass series.
#[derive(Default)]
struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    fn add(&mut self, term: f64) {
        let y = term - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

/// Derived constants of the construction for a given smoothness order.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct ConstantsBundle {
    /// A = integral of the bump over [0, 1] = ((r+1)!)^2 / (2r+3)!.
    pub bump_integral: f64,
    /// K: upper bound for the bump and its first r derivatives on [0, 1].
    pub bump_sup: f64,
    /// D: Lipschitz constant of the slope function on [0, 1]; the stage-1
    /// gaps dominate, so D = 3^(1-2r) sup|phi'|.
    pub slope_lipschitz: f64,
    /// B: flatness constant with |g(x) - g(x0)| <= B |x - x0|^(r+1) at Cantor
    /// points, from the Taylor bound sup|g^(r+1)| / (r+1)!.
    pub flatness_bound: f64,
    /// Inverse Holder exponent beta = 3r of the rise lower bound.
    pub beta: f64,
    /// Holder exponent alpha = 1/(3r) guaranteed for the field.
    pub alpha: f64,
    /// C with |X2(y2) - X2(y1)| <= C |y2 - y1|^alpha: C = 18 D A^(-alpha),
    /// from the derived rise lower bound |dg| >= A (|dx|/18)^beta.
    pub holder_constant: f64,
}

/// Evaluator for the base leaf of the construction at a fixed smoothness
/// order: slope, rise, monotone inverse, and derived constants.
#[derive(Debug, Clone)]
pub struct Generator {
    order: SmoothnessOrder,
    cfg: EvalConfig,
    bump: BumpPoly,
    bump_integral: f64,
    /// 3^(-3r), the per-stage weight ratio of the gap-mass series.
    stage_ratio: f64,
    total_rise: f64,
}

impl Generator {
    pub fn new(order: SmoothnessOrder, cfg: EvalConfig) -> Self {
        let bump = BumpPoly::new(order);
        let r = order.get();
        let bump_integral = bump.integral;
        let stage_ratio = 3f64.powi(-(3 * r as i32));
        // g(1) = A q / (1 - 2q) = A / (27^r - 2), q = 3^(-3r).
        let total_rise = bump_integral / (27f64.powi(r as i32) - 2.0);
        Generator {
            order,
            cfg,
            bump,
            bump_integral,
            stage_ratio,
            total_rise,
        }
    }

    pub fn order(&self) -> SmoothnessOrder {
        self.order
    }

    pub fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    /// A = integral of the bump over [0, 1], from exact factorials.
    pub fn bump_integral(&self) -> f64 {
        self.bump_integral
    }

    /// Total rise g(1) = A / (27^r - 2).
    pub fn total_rise(&self) -> f64 {
        self.total_rise
    }

    /// j-th derivative of the bump at tau in [0, 1], 0 <= j <= r.
    pub fn bump(&self, tau: f64, j: u32) -> Result<f64> {
        if !(0.0..=1.0).contains(&tau) {
            return Err(Error::domain(format!(
                "bump argument must lie in [0, 1], got {tau}"
            )));
        }
        if j > self.order.get() {
            return Err(Error::domain(format!(
                "bump derivative order must satisfy 0 <= j <= {}, got {j}",
                self.order.get()
            )));
        }
        Ok(self.bump.deriv(tau, j))
    }

    /// Slope of the base leaf: zero on the Cantor set, the scaled bump on
    /// gaps, and the derivative of the power extension outside [0, 1].
    ///
    /// Non-negative on [0, 1] and positive for x < 0 (the extension rises
    /// from the left). NaN input propagates.
    pub fn slope(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        let r = self.order.get() as i32;
        if x < 0.0 {
            return -2.0 * r as f64 * x.powi(2 * r - 1);
        }
        if x > 1.0 {
            return 2.0 * r as f64 * (x - 1.0).powi(2 * r - 1);
        }
        match classify(x, &self.cfg).expect("finite by construction") {
            PointClass::InCantor { .. } => 0.0,
            PointClass::InGap { gap, local } => {
                3f64.powi(-2 * r * gap.stage as i32) * self.bump.deriv(local, 0)
            }
            PointClass::OutsideLeft | PointClass::OutsideRight => unreachable!(),
        }
    }

    /// j-th derivative of the slope, 1 <= j <= r. On a stage-n gap this is
    /// 3^((j-2r)n) phi^(j) of the local coordinate; zero on the Cantor set.
    pub fn slope_deriv(&self, x: f64, j: u32) -> Result<f64> {
        let r = self.order.get();
        if !(1..=r).contains(&j) {
            return Err(Error::domain(format!(
                "slope derivative order must satisfy 1 <= j <= {r}, got {j}"
            )));
        }
        if x.is_nan() {
            return Err(Error::domain("slope derivative requires a finite input"));
        }
        let ri = r as i32;
        if !(0.0..=1.0).contains(&x) {
            // d^j/dx^j of the extension derivative +/- 2r u^(2r-1).
            let (sign, u) = if x < 0.0 { (-1.0, x) } else { (1.0, x - 1.0) };
            let mut coeff = 2.0 * ri as f64;
            for i in 1..=j {
                coeff *= (2 * r - i) as f64;
            }
            return Ok(sign * coeff * u.powi(2 * ri - 1 - j as i32));
        }
        Ok(match classify(x, &self.cfg)? {
            PointClass::InCantor { .. } => 0.0,
            PointClass::InGap { gap, local } => {
                3f64.powi((j as i32 - 2 * ri) * gap.stage as i32) * self.bump.deriv(local, j)
            }
            PointClass::OutsideLeft | PointClass::OutsideRight => unreachable!(),
        })
    }

    /// Rise of the base leaf g(x), the integral of the slope from 0.
    ///
    /// On [0, 1] this is the gap-mass series truncated at the configured
    /// depth; the discarded tail A sum_{n>N} 2^(n-1) 3^(-3rn) is below
    /// 1e-16 g(1) for every admissible configuration. Outside [0, 1] the
    /// power extension applies.
    pub fn rise(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        let r = self.order.get() as i32;
        if x == 0.0 {
            return 0.0;
        }
        if x < 0.0 {
            return -x.powi(2 * r);
        }
        if x >= 1.0 {
            return self.total_rise + (x - 1.0).powi(2 * r);
        }
        let mut counts = StageCounts::new(x);
        let mut acc = KahanSum::default();
        let mut weight = 1.0;
        for _ in 0..self.cfg.depth {
            weight *= self.stage_ratio;
            let cnt = counts.next_stage();
            if cnt > 0 {
                acc.add(self.bump_integral * weight * cnt as f64);
            }
        }
        if let Some((stage, local)) = counts.partial_gap() {
            acc.add(self.stage_ratio.powi(stage as i32) * self.bump.antideriv(local));
        }
        acc.value()
    }

    /// Monotone inverse of the rise: x with |g(x) - y| <= sup(g') * tolerance.
    ///
    /// The power branches outside [0, g(1)] invert in closed form; inside,
    /// bisection on [0, 1] runs to the configured absolute tolerance on x.
    /// Newton refinement is not used: g' vanishes on the Cantor set.
    pub fn rise_inverse(&self, y: f64) -> Result<f64> {
        if !y.is_finite() {
            return Err(Error::domain(format!(
                "rise_inverse requires a finite input, got {y}"
            )));
        }
        let r = self.order.get();
        if y <= 0.0 {
            // y = -x^(2r), x <= 0.
            return Ok(-(-y).powf(1.0 / (2 * r) as f64));
        }
        if y >= self.total_rise {
            return Ok(1.0 + (y - self.total_rise).powf(1.0 / (2 * r) as f64));
        }
        bisect(|x| self.rise(x), 0.0, 1.0, y, &self.cfg)
    }

    /// Classification depth and snap tolerance supportable by the rise
    /// inversion, as (depth, snap).
    ///
    /// The rise is flat to order 3r on the Cantor set, so a machine-precision
    /// ordinate only determines the preimage to (noise / K2)^(1/(3r)) there,
    /// with K2 = A 18^(-3r) the rise lower-bound constant. Membership
    /// decisions snap within that uncertainty and scan only stages still an
    /// order of magnitude wider than it: about six stages at r = 1, fewer for
    /// higher orders. Deeper membership is not decidable from f64 ordinates.
    pub fn membership_resolution(&self) -> (u32, f64) {
        let noise = 4.0 * f64::EPSILON * self.total_rise;
        let k2 = self.bump_integral * 18f64.powi(-(3 * self.order.get() as i32));
        let snap = (noise / k2)
            .powf(1.0 / (3 * self.order.get()) as f64)
            .max(20.0 * self.cfg.tolerance);
        let depth = ((1.0 / (10.0 * snap)).ln() / 3f64.ln()).floor().max(1.0) as u32;
        (depth.min(self.cfg.depth), snap)
    }

    /// Derived constants; the suprema come from a dense grid on [0, 1]
    /// inflated by 1%, reported as upper estimates.
    pub fn constants(&self) -> ConstantsBundle {
        const GRID: usize = 100_000;
        let r = self.order.get();
        let mut bump_sup = 0f64;
        let mut d1_sup = 0f64;
        let mut dr_sup = 0f64;
        for i in 0..=GRID {
            let t = i as f64 / GRID as f64;
            for j in 0..=r {
                let v = self.bump.deriv(t, j).abs();
                bump_sup = bump_sup.max(v);
                if j == 1 {
                    d1_sup = d1_sup.max(v);
                }
                if j == r {
                    dr_sup = dr_sup.max(v);
                }
            }
        }
        bump_sup *= 1.01;
        let slope_lipschitz = 3f64.powi(1 - 2 * r as i32) * d1_sup * 1.01;
        // Inside [0, 1], sup |g^(r+1)| = sup |h^(r)| is attained on stage-1
        // gaps. The flatness bound must also cover the Cantor points 0 and 1,
        // where offsets probe the power extension +/- u^(2r) whose r-th slope
        // derivative reaches (2r)!/(r-1)! within a unit of the boundary.
        let mut fact = 1.0;
        for i in 2..=(r + 1) {
            fact *= i as f64;
        }
        let interior = 3f64.powi(-(r as i32)) * dr_sup * 1.01;
        // (2r)!/(r-1)! = r * (r+1) * ... * (2r).
        let mut extension = r as f64;
        for i in (r + 1)..=(2 * r) {
            extension *= i as f64;
        }
        let flatness_bound = interior.max(extension) / fact;
        let beta = (3 * r) as f64;
        let alpha = 1.0 / beta;
        let holder_constant = 18.0 * slope_lipschitz * self.bump_integral.powf(-alpha);
        ConstantsBundle {
            bump_integral: self.bump_integral,
            bump_sup,
            slope_lipschitz,
            flatness_bound,
            beta,
            alpha,
            holder_constant,
        }
    }
}

/// A = ((r+1)!)^2 / (2r+3)! in exact integer arithmetic.
fn exact_bump_integral(r: u32) -> f64 {
    let num: u128 = (1..=(r + 1) as u128).product::<u128>().pow(2);
    let den: u128 = (1..=(2 * r + 3) as u128).product();
    num as f64 / den as f64
}

/// Bisection for f(x) = target on [lo, hi] with f monotone increasing and
/// target bracketed; converges to the configured absolute tolerance on x.
pub(crate) fn bisect(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    target: f64,
    cfg: &EvalConfig,
) -> Result<f64> {
    debug_assert!(lo <= hi);
    let mut iterations = 0;
    while hi - lo > cfg.tolerance {
        if iterations >= cfg.max_iterations {
            return Err(Error::NoConvergence { lo, hi, iterations });
        }
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // bracket no longer splits in f64
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
