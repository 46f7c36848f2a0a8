//! Sample leaves across the foliation family and render them to CSV and SVG.
//!
//! All drawn leaves pass through the origin; they separate visibly only past
//! x = 1, where the staircase shear has accumulated. The files land in the
//! working directory.
//!
//! ```text
//! cargo run --example leaf_gallery
//! ```

use cantorfield::export::{write_leaves_csv, write_leaves_svg, LeafCurve};
use cantorfield::foliation::{FoliationFamily, FoliationParam, LeafSpec};
use cantorfield::{EvalConfig, SmoothnessOrder};
use std::path::Path;

fn main() -> cantorfield::Result<()> {
    let family = FoliationFamily::new(SmoothnessOrder::new(1)?, EvalConfig::default());

    let mut curves = Vec::new();
    for &t in &[0.0, 0.25, 0.5, 0.75, 1.0] {
        let leaf = LeafSpec {
            t: FoliationParam::new(t)?,
            c: 0.0,
        };
        let points = family.sample_leaf(&leaf, -0.5, 2.5, 301)?;
        println!(
            "t = {t:<5}: leaf through the origin, height at x = 2.5 is {:.10e}",
            points.last().expect("non-empty").1
        );
        curves.push(LeafCurve { t, c: 0.0, points });
    }

    let csv = Path::new("leaf_gallery.csv");
    let svg = Path::new("leaf_gallery.svg");
    write_leaves_csv(csv, &curves)?;
    write_leaves_svg(svg, &curves)?;
    println!();
    println!("wrote {} and {}", csv.display(), svg.display());
    println!("every curve is tangent to the same vector field everywhere.");
    Ok(())
}
