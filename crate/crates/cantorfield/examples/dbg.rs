use cantorfield::generator::Generator;
use cantorfield::*;
use rand::Rng;
use rand::SeedableRng;

fn main() {
    let cfg = EvalConfig::default();
    let gen = Generator::new(SmoothnessOrder::new(1).unwrap(), cfg);
    // replicate suite_rng(42, 2)
    let mut rng =
        rand_chacha::ChaCha8Rng::seed_from_u64(42 ^ 2u64.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    // fast-forward through the earlier draws of the generator suite
    let mut shown = 0;
    for i in 0..2_000_000 {
        let x: f64 = rng.random_range(0.0..1.0);
        let h = gen.slope(x);
        let in_gap = !classify(x, &cfg).unwrap().is_cantor();
        if (h < 0.0) || (in_gap && h <= 0.0) || (!in_gap && h != 0.0) {
            println!(
                "i={i} x={x:.20e} h={h:e} in_gap={in_gap} class={:?}",
                classify(x, &cfg).unwrap()
            );
            shown += 1;
            if shown > 8 {
                break;
            }
        }
    }
    println!("done");
}
