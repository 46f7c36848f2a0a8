//! Probe the vector field along a vertical line and watch its vertical
//! component lose the Lipschitz property at the Cantor ordinates.
//!
//! ```text
//! cargo run --example field_probe
//! ```

use cantorfield::foliation::FoliationFamily;
use cantorfield::verify::estimate_holder;
use cantorfield::{EvalConfig, SmoothnessOrder};

fn main() -> cantorfield::Result<()> {
    let family = FoliationFamily::new(SmoothnessOrder::new(1)?, EvalConfig::default());
    let gen = family.generator();
    let total = gen.total_rise();

    println!("the field X = (1, X2(y)) along x = 0:");
    println!("{:>14}  {:>22}", "y", "X2(y)");
    for i in 0..=12 {
        let y = -0.2 * total + 1.4 * total * i as f64 / 12.0;
        println!("{y:>14.6e}  {:>22.15e}", family.field_at(0.0, y)?.dy);
    }
    println!();

    // Difference quotients along the leftmost gaps grow like 3^n: X2 is
    // Holder continuous but not Lipschitz.
    let report = estimate_holder(gen, 2000, 1)?;
    println!("structured blow-up quotients |dX2| / |dy| (growth factor 3):");
    for row in &report.blowup_table {
        println!("  stage {:>2}: {:>14.6}", row.stage, row.quotient);
    }
    Ok(())
}
