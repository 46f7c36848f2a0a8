//! Fit the Hölder exponent of the field's vertical component from sampled
//! difference quotients.
//!
//! The guaranteed exponent is 1/(3r); the measured envelope follows the
//! sharper two-thirds law of the gap family. Both certify Hölder continuity,
//! and the diverging blow-up quotients rule Lipschitz out.
//!
//! ```text
//! cargo run --example holder_fit
//! ```

use cantorfield::generator::Generator;
use cantorfield::verify::estimate_holder;
use cantorfield::{EvalConfig, SmoothnessOrder};

fn main() -> cantorfield::Result<()> {
    for r in 1..=2 {
        let gen = Generator::new(SmoothnessOrder::new(r)?, EvalConfig::default());
        let report = estimate_holder(&gen, 20_000, 42)?;
        let consts = gen.constants();
        println!("order r = {r}:");
        println!("  guaranteed exponent alpha = 1/(3r) = {:.6}", consts.alpha);
        println!(
            "  guaranteed constant       = {:.6}",
            consts.holder_constant
        );
        println!(
            "  fitted envelope exponent  = {:.6} (constant e^{:.3}, rms {:.3}, {} pairs)",
            report.fitted_alpha, report.fitted_log_constant, report.residual_rms, report.pair_count
        );
        println!("  blow-up quotients (ratio 3^r = {}):", 3u32.pow(r));
        for row in &report.blowup_table {
            println!("    stage {:>2}: {:>16.6}", row.stage, row.quotient);
        }
        println!();
    }
    Ok(())
}
