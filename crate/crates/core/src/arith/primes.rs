//! Miller–Rabin primality with reproducible base selection.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use sha2::{Digest, Sha256};

/// Bases that make Miller–Rabin deterministic for every `n < 2^64`.
const U64_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Rounds used above `2^64`; bases are derived from `n` itself.
pub const LARGE_ROUNDS: u32 = 64;

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &SMALL_PRIMES {
        let q = q as u64;
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &U64_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality test. Deterministic for `n < 2^64`; above that, 64 rounds with
/// bases drawn from SHA-256 of `n`, so the answer never depends on ambient
/// randomness.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &q in &SMALL_PRIMES {
        if (n % q).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().expect("n > 1");
    let d = &n_minus_one >> s;
    let span = n - 3u32;
    let n_bytes = n.to_bytes_be();

    'rounds: for round in 0..LARGE_ROUNDS {
        let mut h = Sha256::new();
        h.update(b"selmergen/mr-base");
        h.update(&n_bytes);
        h.update(u64::from(round).to_be_bytes());
        let a = BigUint::from_bytes_be(&h.finalize()) % &span + 2u32;

        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'rounds;
            }
        }
        return false;
    }
    true
}

/// Integer square root rounded down.
pub fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}

/// `true` iff `n` is a perfect square.
pub fn is_square(n: &BigUint) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

pub(crate) fn gcd(a: &BigUint, b: &BigUint) -> BigUint {
    a.gcd(b)
}
