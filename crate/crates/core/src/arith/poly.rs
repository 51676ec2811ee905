//! Root existence for low-degree univariate polynomials over `F_p`.

use num_bigint::BigUint;

use super::field::{Fe, PrimeModulus};

fn trim(mut c: Vec<Fe>) -> Vec<Fe> {
    while c.last().is_some_and(Fe::is_zero) {
        c.pop();
    }
    c
}

/// `a * b mod m` for a monic modulus `m`; coefficients low to high.
fn mul_mod(a: &[Fe], b: &[Fe], m: &[Fe], field: &PrimeModulus) -> Vec<Fe> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = &prod[i + j] + &(x * y);
        }
    }
    rem_monic(prod, m)
}

fn rem_monic(mut r: Vec<Fe>, m: &[Fe]) -> Vec<Fe> {
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().expect("non-empty");
        if lead.is_zero() {
            continue;
        }
        let shift = r.len() - dm;
        for k in 0..dm {
            r[shift + k] = &r[shift + k] - &(&lead * &m[k]);
        }
    }
    trim(r)
}

fn rem(a: Vec<Fe>, b: &[Fe]) -> Vec<Fe> {
    let inv = b.last().expect("non-zero divisor").inv().expect("leading coefficient is non-zero");
    let monic: Vec<Fe> = b.iter().map(|c| c * &inv).collect();
    rem_monic(a, &monic)
}

fn gcd_degree(mut a: Vec<Fe>, mut b: Vec<Fe>) -> usize {
    a = trim(a);
    b = trim(b);
    while !b.is_empty() {
        let r = rem(a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// Whether the polynomial with coefficients `coeffs` (low to high) has a
/// root in `F_p`. The zero polynomial counts as having roots.
///
/// Degree 3 and above are decided by `gcd(Y^p - Y, g) != 1`, with `Y^p`
/// computed by square-and-multiply modulo `g`.
pub fn has_root(coeffs: &[Fe], field: &PrimeModulus) -> bool {
    let g = trim(coeffs.to_vec());
    match g.len() {
        0 => true,
        1 => false,
        2 => true,
        3 => {
            // b^2 - 4ac
            let disc = &g[1].square() - &(&field.elem(4) * &(&g[2] * &g[0]));
            disc.legendre() >= 0
        }
        _ => {
            if g[0].is_zero() {
                return true;
            }
            let inv = g.last().unwrap().inv().expect("non-zero lead");
            let monic: Vec<Fe> = g.iter().map(|c| c * &inv).collect();
            let y = vec![field.zero(), field.one()];
            let y_pow = pow_mod(&y, field.p(), &monic, field);
            let mut h = y_pow;
            h.resize(2.max(h.len()), field.zero());
            h[1] = &h[1] - &field.one();
            gcd_degree(monic, h) >= 1
        }
    }
}

fn pow_mod(base: &[Fe], e: &BigUint, m: &[Fe], field: &PrimeModulus) -> Vec<Fe> {
    let mut acc = vec![field.one()];
    let base = rem_monic(base.to_vec(), m);
    for i in (0..e.bits()).rev() {
        acc = mul_mod(&acc, &acc, m, field);
        if e.bit(i) {
            acc = mul_mod(&acc, &base, m, field);
        }
    }
    acc
}

/// Evaluate a polynomial (coefficients low to high) at `x`.
pub fn eval(coeffs: &[Fe], x: &Fe) -> Fe {
    let field = x.modulus();
    coeffs
        .iter()
        .rev()
        .fold(field.zero(), |acc, c| &(&acc * x) + c)
}
