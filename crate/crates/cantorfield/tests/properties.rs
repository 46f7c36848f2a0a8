//! Property-based tests of the structural invariants.

use cantorfield::foliation::{FoliationFamily, FoliationParam};
use cantorfield::generator::Generator;
use cantorfield::{cantor_function, classify, count_gaps_left, gap_bounds, PointClass};
use cantorfield::{EvalConfig, SmoothnessOrder};
use proptest::prelude::*;

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn generator() -> Generator {
    Generator::new(SmoothnessOrder::new(1).unwrap(), cfg())
}

proptest! {
    /// The staircase is monotone and stays in [0, 1].
    #[test]
    fn staircase_monotone(a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (ca, cb) = (cantor_function(lo, &cfg()), cantor_function(hi, &cfg()));
        prop_assert!((0.0..=1.0).contains(&ca));
        prop_assert!((0.0..=1.0).contains(&cb));
        prop_assert!(ca <= cb, "c({lo}) = {ca} > c({hi}) = {cb}");
    }

    /// Classified gaps really contain their point and reconstruct it.
    #[test]
    fn classification_reconstructs(x in 0.0f64..1.0) {
        match classify(x, &cfg()).unwrap() {
            PointClass::InGap { gap, local } => {
                let (a, b) = gap_bounds(&gap).unwrap();
                prop_assert!(a <= x && x <= b, "x = {x} outside [{a}, {b}]");
                prop_assert!((0.0..1.0).contains(&local));
                let recon = a + local * 3f64.powi(-(gap.stage as i32));
                prop_assert!((recon - x).abs() <= 2.0 * f64::EPSILON * x);
            }
            PointClass::InCantor { depth } => prop_assert_eq!(depth, 34),
            other => prop_assert!(false, "unexpected class {:?}", other),
        }
    }

    /// The slope is non-negative on [0, 1] and vanishes exactly off the gaps.
    #[test]
    fn slope_sign(x in 0.0f64..1.0) {
        let gen = generator();
        let h = gen.slope(x);
        prop_assert!(h >= 0.0);
        let in_gap = !classify(x, &cfg()).unwrap().is_cantor();
        prop_assert_eq!(h > 0.0, in_gap);
    }

    /// The rise is monotone (non-strict at floating resolution) and its
    /// inverse lands back within a slope-scaled tolerance.
    #[test]
    fn rise_monotone_and_invertible(a in -1.0f64..2.0, b in -1.0f64..2.0, y in -0.5f64..0.5) {
        let gen = generator();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(gen.rise(lo) <= gen.rise(hi));
        let x = gen.rise_inverse(y).unwrap();
        prop_assert!((gen.rise(x) - y).abs() <= 1e-12);
    }

    /// Gap counts are bounded by the stage population and agree with brute
    /// enumeration at shallow stages.
    #[test]
    fn gap_counts(x in 0.0f64..1.0, stage in 1u32..6) {
        let counted = count_gaps_left(x, stage, &cfg()).unwrap();
        prop_assert!(counted <= 1 << (stage - 1));
        let p = 3u64.pow(stage);
        let mut expected = 0;
        for k in 0..p {
            if k % 3 != 1 {
                continue;
            }
            let mut prefix = k / 3;
            let mut valid = true;
            while prefix > 0 {
                if prefix % 3 == 1 {
                    valid = false;
                    break;
                }
                prefix /= 3;
            }
            if valid && (k + 1) as f64 / p as f64 <= x {
                expected += 1;
            }
        }
        prop_assert_eq!(counted, expected);
    }

    /// Leaf heights are monotone in x and ordered monotonically in t.
    #[test]
    fn leaf_heights_ordered(x in 0.0f64..3.0, t1 in 0.0f64..1.0, t2 in 0.0f64..1.0) {
        let family = FoliationFamily::new(SmoothnessOrder::new(1).unwrap(), cfg());
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let y_lo = family.leaf_height(FoliationParam::new(hi).unwrap(), x).unwrap();
        let y_hi = family.leaf_height(FoliationParam::new(lo).unwrap(), x).unwrap();
        // Larger t shears the leaf further right, so its height at fixed
        // x >= 0 is smaller; allow the bisection tolerance as slack.
        prop_assert!(y_lo <= y_hi + 2e-14, "t = {lo}, {hi} at x = {x}: {y_lo} > {y_hi}");
    }

    /// The field has unit horizontal component and non-negative slope above
    /// the axis.
    #[test]
    fn field_shape(y in -1.0f64..0.01) {
        let family = FoliationFamily::new(SmoothnessOrder::new(1).unwrap(), cfg());
        let v = family.field_at(0.0, y).unwrap();
        prop_assert_eq!(v.dx, 1.0);
        prop_assert!(v.dy >= 0.0);
    }

    /// The transverse staircase is monotone with range [0, 1].
    #[test]
    fn psi_monotone(y1 in -1e-3f64..3e-3, y2 in -1e-3f64..3e-3) {
        let gen = generator();
        let (lo, hi) = if y1 <= y2 { (y1, y2) } else { (y2, y1) };
        let (p1, p2) = (
            cantorfield::staircase::psi(&gen, lo).unwrap(),
            cantorfield::staircase::psi(&gen, hi).unwrap(),
        );
        prop_assert!((0.0..=1.0).contains(&p1));
        prop_assert!(p1 <= p2);
    }
}
