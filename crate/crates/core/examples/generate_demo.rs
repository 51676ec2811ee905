//! Generate a curve from the demo seed and print its summary.
//!
//! Pass a different 64-hex-digit seed as the first argument to try another.

use selmergen::pipeline::{generate, GenerationConfig};
use selmergen::stream::{parse_seed, SeedContext};
use selmergen::{demo_context, DEMO_DS};

fn main() {
    let ctx = match std::env::args().nth(1) {
        Some(hex) => {
            let sigma = parse_seed(&hex).expect("64 hex digits");
            SeedContext::new(demo_context().modulus().clone(), DEMO_DS, sigma).unwrap()
        }
        None => demo_context(),
    };
    let cfg = GenerationConfig::for_modulus(ctx.modulus());
    let g = generate(&ctx, &cfg).expect("generation succeeds");

    print!("{}", selmergen::cli::summary(&g.transcript));
    let r = &g.transcript.rejections;
    println!(
        "rejected {} quartics and {} cubics before trial {}",
        r.quartic_total(),
        r.cubic_total(),
        g.transcript.trial_index
    );
}
