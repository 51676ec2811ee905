//! Round-trip a transcript through its canonical encoding, verify it, then
//! tamper with it.

use selmergen::demo_context;
use selmergen::pipeline::{generate, GenerationConfig};
use selmergen::transcript::{self, verify, VerifyOptions};

fn main() {
    let ctx = demo_context();
    let tr = generate(&ctx, &GenerationConfig::for_modulus(ctx.modulus()))
        .unwrap()
        .transcript;

    let bytes = transcript::serialize(&tr);
    let parsed = transcript::parse(&bytes).expect("canonical");
    assert_eq!(transcript::serialize(&parsed), bytes);
    println!("{} bytes, digest {}", bytes.len(), parsed.content_digest);

    let report = verify(&parsed, &VerifyOptions::default());
    for c in &report.checks {
        println!("  {:<15} {}", c.stage, c.detail);
    }
    println!("verified: {}", report.passed());

    // A resealed edit still fails replay.
    let mut forged = parsed.clone();
    forged.reconciliation.c4 += 1u32;
    forged.seal();
    let report = verify(&forged, &VerifyOptions::default());
    println!("forged c4 diverges at {:?}", report.first_divergence);

    // Non-canonical bytes are refused before verification.
    let mut spaced = bytes.clone();
    spaced.insert(1, b' ');
    println!("{}", transcript::parse(&spaced).unwrap_err());
}
