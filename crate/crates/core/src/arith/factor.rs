//! Integer factorization: trial division followed by Pollard rho.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::primes::{gcd, is_prime};
use crate::error::FactorError;

/// Trial division limit.
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Default Pollard rho iteration budget per composite.
pub const DEFAULT_RHO_BUDGET: u64 = 1 << 20;

/// Prime-power decomposition of an integer.
///
/// `factors` is sorted by prime, ascending. When `cofactor_complete` is
/// false, `remaining` holds the unfactored composite part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(BigUint, u32)>,
    pub cofactor_complete: bool,
    pub remaining: Option<BigUint>,
}

impl Factorization {
    pub fn complete(factors: Vec<(BigUint, u32)>) -> Self {
        Self {
            factors,
            cofactor_complete: true,
            remaining: None,
        }
    }

    /// Product of all listed prime powers times the unfactored remainder.
    pub fn product(&self) -> BigUint {
        let mut acc = self.remaining.clone().unwrap_or_else(BigUint::one);
        for (q, e) in &self.factors {
            acc *= q.pow(*e);
        }
        acc
    }

    pub fn largest_prime(&self) -> Option<&BigUint> {
        self.factors.last().map(|(q, _)| q)
    }

    /// Squarefree kernel of the odd-exponent primes, i.e. the squarefree
    /// part `m` with `n = s^2 * m`.
    pub fn squarefree_part(&self) -> BigUint {
        self.factors
            .iter()
            .filter(|(_, e)| e % 2 == 1)
            .fold(BigUint::one(), |acc, (q, _)| acc * q)
    }
}

/// Factorization with the default rho budget.
pub fn factorize(n: &BigUint) -> Result<Factorization, FactorError> {
    factorize_with_budget(n, DEFAULT_RHO_BUDGET)
}

pub fn factorize_with_budget(n: &BigUint, rho_budget: u64) -> Result<Factorization, FactorError> {
    if n.is_zero() {
        return Err(FactorError::Zero);
    }
    let mut found: Vec<BigUint> = Vec::new();
    let mut rest = n.clone();

    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT {
        if &BigUint::from(d) * d > rest {
            break;
        }
        while (&rest % d).is_zero() {
            found.push(BigUint::from(d));
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }

    let mut unresolved = BigUint::one();
    let mut stack = Vec::new();
    if !rest.is_one() {
        stack.push(rest);
    }
    while let Some(m) = stack.pop() {
        if is_prime(&m) {
            found.push(m);
            continue;
        }
        let r = m.sqrt();
        if &r * &r == m {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        match pollard_rho(&m, rho_budget) {
            Some(f) => {
                let g = &m / &f;
                stack.push(f);
                stack.push(g);
            }
            None => unresolved *= m,
        }
    }

    found.sort();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for q in found {
        match factors.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => factors.push((q, 1)),
        }
    }

    if unresolved.is_one() {
        Ok(Factorization::complete(factors))
    } else {
        Err(FactorError::WorkBoundExceeded(Factorization {
            factors,
            cofactor_complete: false,
            remaining: Some(unresolved),
        }))
    }
}

/// Brent's variant of Pollard rho over `x^2 + c`, trying `c = 1, 2, 3, …`
/// until a non-trivial factor appears or `budget` iterations are spent.
fn pollard_rho(n: &BigUint, budget: u64) -> Option<BigUint> {
    if let Some(small) = n.to_u64() {
        return pollard_rho_u64(small, budget).map(BigUint::from);
    }
    let mut spent = 0u64;
    let mut c = 1u32;
    const BATCH: u64 = 64;
    while spent < budget {
        let step = |x: &BigUint| (x * x + c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut r = 1u64;
        while g.is_one() && spent < budget {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let lim = BATCH.min(r - k);
                for _ in 0..lim {
                    y = step(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                spent += lim;
                g = gcd(&q, n);
                k += lim;
            }
            r *= 2;
        }
        if g == *n {
            // batch overshot; back up one step at a time
            for _ in 0..BATCH {
                ys = step(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = gcd(&diff, n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
        c += 1;
    }
    None
}

fn pollard_rho_u64(n: u64, budget: u64) -> Option<u64> {
    fn mul(a: u64, b: u64, m: u64) -> u64 {
        ((a as u128 * b as u128) % m as u128) as u64
    }
    fn g(a: u64, b: u64) -> u64 {
        let (mut a, mut b) = (a, b);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    if n.is_multiple_of(2) {
        return Some(2);
    }
    let mut spent = 0u64;
    let mut c = 1u64;
    while spent < budget {
        let f = |x: u64| ((mul(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 && spent < budget {
            x = f(x);
            y = f(f(y));
            d = g(x.abs_diff(y), n);
            spent += 1;
        }
        if d != 1 && d != n {
            return Some(d);
        }
        c += 1;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn pairs(f: &Factorization) -> Vec<(u64, u32)> {
        f.factors.iter().map(|(q, e)| (q.to_u64().unwrap(), *e)).collect()
    }

    #[test]
    fn table_orders() {
        let f = factorize(&big(99711)).unwrap();
        assert_eq!(pairs(&f), vec![(3, 4), (1231, 1)]);
        let f = factorize(&big(100297)).unwrap();
        assert_eq!(pairs(&f), vec![(100297, 1)]);
        let f = factorize(&big(1)).unwrap();
        assert!(f.factors.is_empty() && f.cofactor_complete);
    }

    #[test]
    fn needs_rho() {
        // two primes above the trial-division limit
        let a = 1_000_003u64;
        let b = 1_000_033u64;
        let f = factorize(&big(a * b)).unwrap();
        assert_eq!(pairs(&f), vec![(a, 1), (b, 1)]);

        let p = BigUint::from(4_294_967_311u64);
        let q = BigUint::from(4_294_967_357u64);
        let n = &p * &q * &q;
        let f = factorize(&n).unwrap();
        assert_eq!(f.factors, vec![(p, 1), (q, 2)]);
    }

    #[test]
    fn budget_exhaustion_keeps_partial() {
        // 12 * (two ~64-bit primes): rho with a tiny budget cannot split it
        let a = BigUint::from(18_446_744_073_709_551_557u64);
        let b = BigUint::from(18_446_744_073_709_551_533u64);
        let n = &a * &b * 12u32;
        match factorize_with_budget(&n, 16) {
            Err(FactorError::WorkBoundExceeded(partial)) => {
                assert!(!partial.cofactor_complete);
                assert_eq!(pairs(&partial), vec![(2, 2), (3, 1)]);
                assert_eq!(partial.remaining.clone().unwrap(), &a * &b);
                assert_eq!(partial.product(), n);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn squarefree_part() {
        let f = factorize(&big(314163)).unwrap();
        assert_eq!(pairs(&f), vec![(3, 2), (67, 1), (521, 1)]);
        assert_eq!(f.squarefree_part(), big(34907));
    }
}
