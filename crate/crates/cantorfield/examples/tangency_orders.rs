//! Contact orders of the leaves: flat beyond order r + 1 on the transported
//! Cantor set, plain order 1 away from it.
//!
//! ```text
//! cargo run --example tangency_orders
//! ```

use cantorfield::foliation::{FoliationFamily, FoliationParam};
use cantorfield::verify::check_tangency_flatness;
use cantorfield::{EvalConfig, SmoothnessOrder};

fn main() -> cantorfield::Result<()> {
    let family = FoliationFamily::new(SmoothnessOrder::new(1)?, EvalConfig::default());
    let grid = [
        FoliationParam::new(0.0)?,
        FoliationParam::new(0.5)?,
        FoliationParam::new(1.0)?,
    ];
    let report = check_tangency_flatness(&family, &grid, 42)?;

    println!(
        "largest |leaf slope - field| over the sample grid: {:.3e}",
        report.max_residual
    );
    println!(
        "one-sided slope of the origin leaf at 0: {:.3e}",
        report.origin_slope
    );
    println!();
    println!(
        "{:>6}  {:>22}  {:>10}  anchor type",
        "t", "anchor z0", "order"
    );
    for fit in &report.fits {
        println!(
            "{:>6}  {:>22.15}  {:>10.4}  {}",
            fit.t,
            fit.z0,
            fit.order,
            if fit.on_cantor_image {
                "transported Cantor point"
            } else {
                "mid-gap control"
            }
        );
    }
    Ok(())
}
