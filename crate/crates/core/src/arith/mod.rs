//! Exact arithmetic in `F_p` and the integer number theory behind it.

mod factor;
mod field;
pub mod poly;
mod primes;

pub use factor::{factorize, factorize_with_budget, Factorization, DEFAULT_RHO_BUDGET, TRIAL_DIVISION_LIMIT};
pub use field::{Fe, PrimeModulus};
pub use primes::{is_prime, is_prime_u64, is_square, isqrt};
