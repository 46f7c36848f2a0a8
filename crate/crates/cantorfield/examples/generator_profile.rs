//! The slope function and its integral, the rise: the basic leaf profile.
//!
//! The rise is strictly increasing yet flat to order 3r along the Cantor
//! set; its closed forms at triadic points come out of the gap-mass series.
//!
//! ```text
//! cargo run --example generator_profile
//! ```

use cantorfield::generator::Generator;
use cantorfield::{EvalConfig, SmoothnessOrder};

fn main() -> cantorfield::Result<()> {
    let gen = Generator::new(SmoothnessOrder::new(1)?, EvalConfig::default());

    println!("bump integral A = {:.17} (= 1/30)", gen.bump_integral());
    println!("total rise g(1) = {:.17} (= 1/750)", gen.total_rise());
    println!();

    println!("{:>8}  {:>24}  {:>24}", "x", "slope h(x)", "rise g(x)");
    for i in 0..=16 {
        let x = i as f64 / 16.0;
        println!(
            "{x:>8.4}  {:>24.17e}  {:>24.17e}",
            gen.slope(x),
            gen.rise(x)
        );
    }
    println!();

    // Self-similarity: scaling x by 1/3 scales the slope by 3^-2r and the
    // rise by 3^-3r.
    let x = 0.437;
    println!(
        "h(x/3) / h(x) = {:.12} (= 1/9)",
        gen.slope(x / 3.0) / gen.slope(x)
    );
    println!(
        "g(x/3) / g(x) = {:.12} (= 1/27)",
        gen.rise(x / 3.0) / gen.rise(x)
    );
    println!();

    // The monotone inverse brackets every ordinate.
    for &y in &[-1.0, 0.0, 1.0 / 1500.0, 1.0 / 750.0, 0.5] {
        let x = gen.rise_inverse(y)?;
        println!(
            "g^-1({y:<12.6e}) = {x:<22.17} residual {:.3e}",
            (gen.rise(x) - y).abs()
        );
    }
    Ok(())
}
