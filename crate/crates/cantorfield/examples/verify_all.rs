//! Run every verification suite through the library API and print the
//! aggregated report.
//!
//! ```text
//! cargo run --example verify_all
//! ```

use cantorfield::verify::run_all;
use cantorfield::{EvalConfig, SmoothnessOrder};

fn main() -> cantorfield::Result<()> {
    let report = run_all(SmoothnessOrder::new(1)?, EvalConfig::default(), 42)?;
    for suite in &report.suites {
        println!(
            "[{}] {}",
            if suite.pass { "PASS" } else { "FAIL" },
            suite.name
        );
        for check in &suite.checks {
            println!(
                "    {:55} measured {:>13.4e}  bound {:>10.2e}",
                check.label, check.measured, check.bound
            );
        }
    }
    println!();
    println!("overall: {}", if report.pass { "PASS" } else { "FAIL" });
    println!("(the serialized document is byte-stable for a fixed seed)");
    Ok(())
}
