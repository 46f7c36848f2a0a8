//! Arithmetic on the middle-thirds Cantor set C: point classification, gap
//! enumeration and counting, and the classical Cantor staircase function.
//!
//! The complementary gaps of C are indexed by stage: a stage-n gap is an open
//! interval (k/3^n, (k+1)/3^n) of length 3^-n whose interior points have
//! ternary digit 1 at position n after n-1 digits drawn from {0, 2}. Stage n
//! contributes 2^(n-1) gaps.
//!
//! All classification is exact: digits come from integer arithmetic on the
//! significand (see `ternary`), never from repeated floating multiplication.

use crate::config::{pow3_u64, EvalConfig};
use crate::error::{Error, Result};
use crate::ternary::{DigitScan, TernaryStream};

/// Scan depth of the staircase function: 3^-64 is far below the spacing of
/// doubles in (0, 1], so the value is resolved past double precision.
const STAIRCASE_DEPTH: u32 = 64;

/// Staircase inputs within this many ulp of a stage boundary k/3^n resolve to
/// the boundary, so the staircase takes the same value on both endpoints of a
/// gap even when the endpoints were rounded to doubles from the other side.
/// Rounding a boundary to a double lands within half an ulp of it.
const STAIRCASE_SNAP_ULPS: f64 = 4.0;

/// Snap windows stop once they exceed this fraction of a ternary place; a
/// window that wide would no longer identify a uniquely nearest boundary.
const SNAP_WINDOW_GATE: f64 = 1e-6;

/// A complementary gap of the Cantor set: the open interval
/// (index/3^stage, (index+1)/3^stage).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapId {
    /// Stage n at which the gap is removed; the gap has length 3^-n.
    pub stage: u32,
    /// Integer k of the left endpoint a = k/3^n.
    pub index: u64,
}

impl GapId {
    /// Validates the gap invariants: k == 1 (mod 3) and the leading digits of
    /// k in base 3 all lie in {0, 2}.
    pub fn new(stage: u32, index: u64) -> Result<Self> {
        if stage == 0 {
            return Err(Error::domain("gap stage must be at least 1"));
        }
        let p = pow3_u64(stage)?;
        if index >= p {
            return Err(Error::domain(format!(
                "gap index {index} out of range for stage {stage} (need index < 3^{stage})"
            )));
        }
        if index % 3 != 1 {
            return Err(Error::domain(format!(
                "gap index {index} is not a middle third (index mod 3 must be 1)"
            )));
        }
        let mut prefix = index / 3;
        while prefix > 0 {
            if prefix % 3 == 1 {
                return Err(Error::domain(format!(
                    "gap index {index}: prefix digits must lie in {{0, 2}}"
                )));
            }
            prefix /= 3;
        }
        Ok(GapId { stage, index })
    }
}

/// Position of a real number relative to the Cantor set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PointClass {
    /// No gap containing the point was found among stages 1..=depth.
    /// Endpoints of gaps classify here: they belong to C.
    InCantor { depth: u32 },
    /// Interior of a complementary gap, with the local coordinate
    /// s = 3^n (x - a) in (0, 1).
    InGap { gap: GapId, local: f64 },
    /// x < 0.
    OutsideLeft,
    /// x > 1.
    OutsideRight,
}

impl PointClass {
    pub fn is_cantor(&self) -> bool {
        matches!(self, PointClass::InCantor { .. })
    }
}

/// Classifies x relative to the Cantor set, scanning at most `cfg.depth`
/// ternary stages.
///
/// Total on finite reals; non-finite input is a domain error.
pub fn classify(x: f64, cfg: &EvalConfig) -> Result<PointClass> {
    if !x.is_finite() {
        return Err(Error::domain(format!(
            "classify requires a finite input, got {x}"
        )));
    }
    if x < 0.0 {
        return Ok(PointClass::OutsideLeft);
    }
    if x > 1.0 {
        return Ok(PointClass::OutsideRight);
    }
    if x == 0.0 || x == 1.0 {
        return Ok(PointClass::InCantor { depth: cfg.depth });
    }
    let Some(mut scan) = DigitScan::new(x) else {
        // Below 2^-73 every scanned digit is 0.
        return Ok(PointClass::InCantor { depth: cfg.depth });
    };
    let mut index: u64 = 0;
    for stage in 1..=cfg.depth {
        let d = scan.next_digit();
        index = 3 * index + d as u64;
        if d == 1 {
            if scan.exhausted() {
                // Exact left endpoint of the gap: belongs to C.
                return Ok(PointClass::InCantor { depth: cfg.depth });
            }
            return Ok(PointClass::InGap {
                gap: GapId { stage, index },
                local: scan.fraction(),
            });
        }
    }
    Ok(PointClass::InCantor { depth: cfg.depth })
}

/// Endpoints (a, b) = (k/3^n, (k+1)/3^n) of a gap, correctly rounded from the
/// exact integer pair.
pub fn gap_bounds(gap: &GapId) -> Result<(f64, f64)> {
    let p = pow3_u64(gap.stage)?;
    Ok((
        gap.index as f64 / p as f64,
        (gap.index + 1) as f64 / p as f64,
    ))
}

/// Number of stage-n gaps whose closure lies entirely to the left of x, i.e.
/// with right endpoint (k+1)/3^n <= x. Single digit scan, no enumeration.
pub fn count_gaps_left(x: f64, stage: u32, cfg: &EvalConfig) -> Result<u64> {
    if !x.is_finite() || !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!(
            "count_gaps_left requires x in [0, 1], got {x}"
        )));
    }
    if stage == 0 || stage > cfg.depth {
        return Err(Error::domain(format!(
            "count_gaps_left stage must satisfy 1 <= n <= depth ({}), got {stage}",
            cfg.depth
        )));
    }
    let mut counts = StageCounts::new(x);
    let mut cnt = 0;
    for _ in 0..stage {
        cnt = counts.next_stage();
    }
    Ok(cnt)
}

/// Streaming per-stage gap counts for a fixed x in [0, 1].
///
/// Stage i compares gaps against x's exact ternary prefix: with L = number of
/// {0,2}-prefixes of length i-1 strictly below x's prefix, the count of
/// stage-i gaps with right endpoint <= x is L plus one more when x's prefix
/// is itself a {0,2}-string and digit i equals 2. A digit 1 at stage i puts x
/// inside that stage's gap; `partial_gap` then records the stage and the
/// local coordinate, and later counts just double L.
pub(crate) struct StageCounts {
    stream: TernaryStream,
    below: u64,
    tight: bool,
    stage: u32,
    partial: Option<(u32, f64)>,
}

impl StageCounts {
    pub(crate) fn new(x: f64) -> Self {
        StageCounts {
            stream: TernaryStream::new(x.clamp(0.0, 1.0)),
            below: 0,
            tight: true,
            stage: 0,
            partial: None,
        }
    }

    /// Count of gaps at the next stage entirely to the left of x.
    pub(crate) fn next_stage(&mut self) -> u64 {
        self.stage += 1;
        debug_assert!(
            self.stage <= 63,
            "stage counts overflow u64 beyond stage 63"
        );
        if !self.tight {
            let cnt = self.below;
            self.below *= 2;
            return cnt;
        }
        let d = self.stream.next_digit();
        let cnt = self.below + u64::from(d == 2);
        self.below = 2 * self.below + u64::from(d >= 1);
        if d == 1 {
            self.tight = false;
            self.partial = Some((self.stage, self.stream.fraction()));
        }
        cnt
    }

    /// Gap stage and local coordinate when the scan hit a middle third.
    pub(crate) fn partial_gap(&self) -> Option<(u32, f64)> {
        self.partial
    }
}

/// The Cantor staircase (devil's staircase) c(x), clamped to [0, 1] outside
/// the unit interval.
///
/// Ternary digits map 0 -> binary 0 and 2 -> binary 1 until the first digit
/// 1, which contributes a terminating binary 1. The scan resolves at least
/// `STAIRCASE_DEPTH` stages and snaps inputs within a few ulp of a stage
/// boundary onto it, so both endpoints of a gap evaluate to the exact gap
/// value bit-for-bit.
pub fn cantor_function(x: f64, cfg: &EvalConfig) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let snap = STAIRCASE_SNAP_ULPS * f64::EPSILON * x;
    staircase_scan(x, STAIRCASE_DEPTH.max(cfg.depth), snap, SNAP_WINDOW_GATE).value
}

/// Cantor-set membership with tolerance: true when x resolves to a point of C
/// after snapping within `snap` of stage boundaries, scanned `depth` stages.
///
/// Used for membership decisions on pulled-back coordinates whose accuracy is
/// limited by how well a flat function can be inverted; exact membership is
/// not decidable in floating point. Callers size `snap` to the coordinate
/// uncertainty and `depth` so stages stay wider than the snap window.
pub(crate) fn resolve_in_cantor(x: f64, depth: u32, snap: f64) -> bool {
    if x.is_nan() {
        return false;
    }
    if x < -snap || x > 1.0 + snap {
        return false;
    }
    if x <= 0.0 || x >= 1.0 {
        return true;
    }
    staircase_scan(x, depth.clamp(1, STAIRCASE_DEPTH), snap, 0.2).in_cantor
}

struct Resolution {
    value: f64,
    in_cantor: bool,
}

/// Shared scan for the staircase value and snapped Cantor membership.
/// Caller guarantees x in (0, 1) and depth <= 64.
fn staircase_scan(x: f64, depth: u32, snap: f64, gate: f64) -> Resolution {
    debug_assert!(depth <= STAIRCASE_DEPTH);
    let mut stream = TernaryStream::new(x);
    let mut digits = [0u8; STAIRCASE_DEPTH as usize];
    let mut value = 0.0;
    let mut weight = 1.0;
    let mut window = snap;
    for i in 0..depth as usize {
        weight *= 0.5;
        window *= 3.0;
        let snapping = window < gate;
        let d = stream.next_digit();
        let rem = stream.fraction();
        if snapping && rem >= 1.0 - window {
            // Within the snap window of the right boundary (K+1)/3^(i+1):
            // resolve to it by carrying one unit through the digit string.
            return carry_up(&digits[..i], d, value, weight);
        }
        if d == 1 {
            // Middle third: terminating binary digit 1. The left endpoint
            // (exact or snapped) is a point of C; interior points are not.
            let at_endpoint = stream.exhausted() || (snapping && rem <= window);
            return Resolution {
                value: value + weight,
                in_cantor: at_endpoint,
            };
        }
        if d == 2 {
            value += weight;
        }
        if stream.exhausted() || (snapping && rem <= window) {
            // Terminates (or snaps) on a {0,2}-digit point of C.
            return Resolution {
                value,
                in_cantor: true,
            };
        }
        digits[i] = d;
    }
    // Full depth reached with digits in {0, 2}: round the last ternary place.
    if stream.fraction() >= 0.5 {
        let last = digits[depth as usize - 1];
        let undone = if last == 2 { value - weight } else { value };
        return carry_up(&digits[..depth as usize - 1], last, undone, weight);
    }
    Resolution {
        value,
        in_cantor: true,
    }
}

/// Resolves the scan to the ternary point one unit above prefix|d at the
/// current place: increments d, propagating carries through trailing 2s.
/// `value` holds the binary bits of `prefix` only; `weight` is the binary
/// weight of the current place.
fn carry_up(prefix: &[u8], d: u8, value: f64, weight: f64) -> Resolution {
    match d {
        // 0 -> 1 or 1 -> 2: either way the staircase value gains a
        // terminating 1-bit at the current place, and the resolved point
        // (a gap endpoint) belongs to C.
        0 | 1 => Resolution {
            value: value + weight,
            in_cantor: true,
        },
        _ => {
            // 2 -> 3: carry into the stored prefix.
            let mut value = value;
            let mut weight = weight;
            for &p in prefix.iter().rev() {
                weight *= 2.0;
                if p == 2 {
                    value -= weight;
                } else {
                    // 0 -> 1 terminates the carried expansion.
                    return Resolution {
                        value: value + weight,
                        in_cantor: true,
                    };
                }
            }
            // All digits were 2: the resolved point is 1.
            Resolution {
                value: 1.0,
                in_cantor: true,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    #[test]
    fn classify_first_gap() {
        match classify(0.5, &cfg()).unwrap() {
            PointClass::InGap { gap, local } => {
                assert_eq!(gap, GapId { stage: 1, index: 1 });
                assert!((local - 0.5).abs() < 1e-15);
                let (a, b) = gap_bounds(&gap).unwrap();
                assert!((a - 1.0 / 3.0).abs() < 1e-16);
                assert!((b - 2.0 / 3.0).abs() < 1e-16);
            }
            other => panic!("expected InGap, got {other:?}"),
        }
    }

    #[test]
    fn classify_stage_two_gap() {
        // 0.15 lies in (1/9, 2/9) with local coordinate 9*(0.15 - 1/9) = 0.35.
        match classify(0.15, &cfg()).unwrap() {
            PointClass::InGap { gap, local } => {
                assert_eq!(gap, GapId { stage: 2, index: 1 });
                assert!((local - 0.35).abs() < 1e-14, "local = {local}");
            }
            other => panic!("expected InGap, got {other:?}"),
        }
    }

    #[test]
    fn classify_boundaries_and_outside() {
        assert!(classify(0.0, &cfg()).unwrap().is_cantor());
        assert!(classify(1.0, &cfg()).unwrap().is_cantor());
        assert_eq!(classify(-0.2, &cfg()).unwrap(), PointClass::OutsideLeft);
        assert_eq!(classify(1.2, &cfg()).unwrap(), PointClass::OutsideRight);
        assert!(classify(f64::NAN, &cfg()).is_err());
        assert!(classify(f64::INFINITY, &cfg()).is_err());
    }

    #[test]
    fn classify_cantor_points() {
        // 1/4 = 0.0202..._3 and 3/4 = 0.2020..._3 belong to C.
        assert!(classify(0.25, &cfg()).unwrap().is_cantor());
        assert!(classify(0.75, &cfg()).unwrap().is_cantor());
        assert!(classify(1e-300, &cfg()).unwrap().is_cantor());
    }

    #[test]
    fn gap_id_validation() {
        assert!(GapId::new(1, 1).is_ok());
        assert!(GapId::new(2, 7).is_ok());
        assert!(GapId::new(0, 1).is_err());
        assert!(GapId::new(2, 2).is_err()); // not == 1 mod 3
        assert!(GapId::new(2, 4).is_err()); // prefix digit 1
        assert!(GapId::new(2, 9).is_err()); // out of range
        assert!(GapId::new(41, 1).is_err()); // beyond integer range
    }

    #[test]
    fn gap_bounds_examples() {
        let (a, b) = gap_bounds(&GapId::new(2, 1).unwrap()).unwrap();
        assert_eq!((a, b), (1.0 / 9.0, 2.0 / 9.0));
        let (a, b) = gap_bounds(&GapId::new(2, 7).unwrap()).unwrap();
        assert_eq!((a, b), (7.0 / 9.0, 8.0 / 9.0));
    }

    #[test]
    fn count_examples() {
        let cfg = cfg();
        assert_eq!(count_gaps_left(1.0, 1, &cfg).unwrap(), 1);
        assert_eq!(count_gaps_left(1.0, 2, &cfg).unwrap(), 2);
        assert_eq!(count_gaps_left(1.0, 5, &cfg).unwrap(), 16);
        assert_eq!(count_gaps_left(0.5, 2, &cfg).unwrap(), 1);
        for n in 1..=10 {
            assert_eq!(count_gaps_left(0.0, n, &cfg).unwrap(), 0);
        }
        // 2/3 region: exactly one stage-2 gap, (1/9, 2/9), lies left of it.
        assert_eq!(count_gaps_left(2.0 / 3.0, 2, &cfg).unwrap(), 1);
        assert!(count_gaps_left(0.5, 0, &cfg).is_err());
        assert!(count_gaps_left(0.5, 99, &cfg).is_err());
        assert!(count_gaps_left(-0.5, 1, &cfg).is_err());
    }

    #[test]
    fn count_matches_enumeration() {
        // Brute-force oracle: enumerate all stage-n gaps and compare.
        let cfg = cfg();
        for n in 1..=7u32 {
            let p = 3u64.pow(n);
            for &x in &[0.1, 0.3, 1.0 / 3.0, 0.47, 0.5, 0.66, 0.9, 0.999] {
                let mut expected = 0;
                for k in 0..p {
                    if k % 3 != 1 {
                        continue;
                    }
                    let mut pref = k / 3;
                    let mut ok = true;
                    while pref > 0 {
                        if pref % 3 == 1 {
                            ok = false;
                            break;
                        }
                        pref /= 3;
                    }
                    if ok && (k + 1) as f64 / p as f64 <= x {
                        expected += 1;
                    }
                }
                assert_eq!(
                    count_gaps_left(x, n, &cfg).unwrap(),
                    expected,
                    "stage {n}, x = {x}"
                );
            }
        }
    }

    #[test]
    fn staircase_examples() {
        let cfg = cfg();
        assert_eq!(cantor_function(0.0, &cfg), 0.0);
        assert_eq!(cantor_function(1.0, &cfg), 1.0);
        assert_eq!(cantor_function(-2.0, &cfg), 0.0);
        assert_eq!(cantor_function(5.0, &cfg), 1.0);
        assert_eq!(cantor_function(0.5, &cfg), 0.5);
        assert!((cantor_function(0.25, &cfg) - 1.0 / 3.0).abs() < 3e-16);
        assert!(cantor_function(f64::NAN, &cfg).is_nan());
    }

    #[test]
    fn staircase_gap_constancy_at_rounded_endpoints() {
        // Doubles rounded to either side of gap endpoints resolve to the
        // exact gap value.
        let cfg = cfg();
        assert_eq!(cantor_function(1.0 / 3.0, &cfg), 0.5);
        assert_eq!(cantor_function(2.0 / 3.0, &cfg), 0.5);
        assert_eq!(cantor_function(1.0 / 9.0, &cfg), 0.25);
        assert_eq!(cantor_function(2.0 / 9.0, &cfg), 0.25);
        assert_eq!(cantor_function(7.0 / 9.0, &cfg), 0.75);
        assert_eq!(cantor_function(8.0 / 9.0, &cfg), 0.75);
        // Deeper: leftmost stage-10 gap (3^-10, 2*3^-10) maps to 2^-10.
        let p = 3f64.powi(-10);
        assert_eq!(cantor_function(p, &cfg), 2f64.powi(-10));
        assert_eq!(cantor_function(2.0 * p, &cfg), 2f64.powi(-10));
        assert_eq!(cantor_function(1.5 * p, &cfg), 2f64.powi(-10));
    }

    #[test]
    fn staircase_symmetry_spot() {
        // x in [0.5, 1): 1 - x is exact, so the two scans mirror digit for
        // digit and the sum closes to 1 up to the depth-64 truncation.
        let cfg = cfg();
        for &x in &[0.5, 0.53, 0.625, 2.0 / 3.0, 0.8125, 0.9, 0.998] {
            let s = cantor_function(x, &cfg) + cantor_function(1.0 - x, &cfg);
            assert!((s - 1.0).abs() < 1e-12, "x = {x}, sum = {s}");
        }
    }

    #[test]
    fn membership_resolution() {
        let (depth, snap) = (6, 6e-5);
        assert!(resolve_in_cantor(0.0, depth, snap));
        assert!(resolve_in_cantor(1.0, depth, snap));
        assert!(resolve_in_cantor(0.25, depth, snap));
        assert!(resolve_in_cantor(2.0 / 3.0, depth, snap)); // rounds below 2/3 yet resolves into C
        assert!(resolve_in_cantor(1.0 / 3.0, depth, snap));
        assert!(resolve_in_cantor(-1e-9, depth, snap)); // within snap of the endpoint
        assert!(!resolve_in_cantor(0.5, depth, snap));
        assert!(!resolve_in_cantor(0.15, depth, snap));
        assert!(!resolve_in_cantor(-0.1, depth, snap));
        assert!(!resolve_in_cantor(1.1, depth, snap));
        assert!(!resolve_in_cantor(f64::NAN, depth, snap));
    }

    #[test]
    fn partial_gap_tracking() {
        let mut counts = StageCounts::new(0.15);
        counts.next_stage();
        assert_eq!(counts.partial_gap(), None);
        counts.next_stage();
        let (stage, local) = counts.partial_gap().unwrap();
        assert_eq!(stage, 2);
        assert!((local - 0.35).abs() < 1e-14);
    }
}
