//! Deterministic elliptic-curve parameter generation from descent data.
//!
//! A public triple `(p, DS, σ)` seeds three hash streams. Binary quartics and
//! ternary cubics are drawn from them until they pass singularity and local
//! solubility filters; their invariants are blended into `(c4, c6)`, the
//! curve `y^2 = x^3 - 27 c4 x - 54 c6` is counted and validated, and the
//! whole run is written to a canonical transcript that [`transcript::verify`]
//! can re-derive from scratch.
//!
//! ```
//! use selmergen::pipeline::{generate, GenerationConfig};
//!
//! let ctx = selmergen::demo_context();
//! let out = generate(&ctx, &GenerationConfig::for_modulus(ctx.modulus())).unwrap();
//! assert!(out.validation.passed);
//! ```

pub mod arith;
pub mod cli;
pub mod config;
pub mod cubic;
pub mod curve;
pub mod error;
pub mod pipeline;
pub mod quartic;
pub mod reconcile;
pub mod stream;
pub mod transcript;
pub mod validate;

pub use arith::{Fe, PrimeModulus};
pub use error::PipelineError;
pub use stream::SeedContext;

pub const DEMO_PRIME: u64 = 100_003;
pub const DEMO_DS: &str = "SelmerGen-v1";
/// `0123456789abcdef` repeated to 32 bytes.
pub const DEMO_SEED_HEX: &str = "0123456789abcdef0123456789abcdef0123456789abcdef0123456789abcdef";

/// The seed context of the reference demo run.
pub fn demo_context() -> SeedContext {
    let m = PrimeModulus::from_u64(DEMO_PRIME).expect("demo prime");
    let sigma = stream::parse_seed(DEMO_SEED_HEX).expect("demo seed");
    SeedContext::new(m, DEMO_DS, sigma).expect("demo context")
}
