//! Classify points against the middle-thirds Cantor set and reconstruct them
//! from their gap coordinates.
//!
//! ```text
//! cargo run --example classify_point
//! ```

use cantorfield::{cantor_function, classify, count_gaps_left, gap_bounds, EvalConfig, PointClass};

fn main() -> cantorfield::Result<()> {
    let cfg = EvalConfig::default();

    for &x in &[0.5, 0.15, 0.25, 1.0 / 3.0, 0.75, -0.2, 1.5] {
        match classify(x, &cfg)? {
            PointClass::InGap { gap, local } => {
                let (a, b) = gap_bounds(&gap)?;
                let reconstructed = a + local * 3f64.powi(-(gap.stage as i32));
                println!(
                    "x = {x:<8} in the stage-{} gap ({a:.6}, {b:.6}), local s = {local:.6} \
                     (reconstructs {reconstructed:.17})",
                    gap.stage
                );
            }
            PointClass::InCantor { depth } => {
                println!("x = {x:<8} in the Cantor set (no gap through stage {depth})");
            }
            PointClass::OutsideLeft => println!("x = {x:<8} left of [0, 1]"),
            PointClass::OutsideRight => println!("x = {x:<8} right of [0, 1]"),
        }
    }

    println!();
    println!("gaps entirely left of x = 0.5, by stage:");
    for stage in 1..=6 {
        let count = count_gaps_left(0.5, stage, &cfg)?;
        println!(
            "  stage {stage}: {count:>3} of {} gaps",
            1u64 << (stage - 1)
        );
    }

    println!();
    println!("the staircase is constant across each gap:");
    for &x in &[1.0 / 3.0, 0.4, 0.5, 0.6, 2.0 / 3.0] {
        println!("  c({x:.6}) = {}", cantor_function(x, &cfg));
    }
    Ok(())
}
