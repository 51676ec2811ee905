//! Brute-force oracles shared by the integration tests. Everything here works
//! on plain `u64` residues and avoids the library's own algorithms.

#![allow(dead_code)]

use std::collections::BTreeMap;

use selmergen::cubic::MONOMIALS;

pub mod tamper;

pub const SMALL_PRIMES: [u64; 52] = [
    5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101,
    103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197,
    199, 211, 223, 227, 229, 233, 239, 241, 251,
];

pub fn mulm(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

pub fn powm(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    acc
}

pub fn invm(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

pub fn neg(a: u64, p: u64) -> u64 {
    (p - a % p) % p
}

/// `#E(F_p)` by trying every pair `(x, y)`.
pub fn brute_count(p: u64, a: u64, b: u64) -> u64 {
    let mut sq_count = vec![0u64; p as usize];
    for y in 0..p {
        sq_count[(y * y % p) as usize] += 1;
    }
    let mut n = 1;
    for x in 0..p {
        let r = (mulm(mulm(x, x, p), x, p) + mulm(a, x, p) + b) % p;
        n += sq_count[r as usize];
    }
    n
}

/// Product of homogeneous binary forms indexed by the power of `x`.
fn bmul(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + mulm(a, b, p)) % p;
        }
    }
    out
}

/// `f(αx + βz, γx + δz)` for `f = a x^4 + b x^3 z + c x^2 z^2 + d x z^3 + e z^4`.
pub fn substitute_quartic(c: [u64; 5], m: [[u64; 2]; 2], p: u64) -> [u64; 5] {
    // linear forms indexed by x-power: [z coefficient, x coefficient]
    let l1 = [m[0][1], m[0][0]];
    let l2 = [m[1][1], m[1][0]];
    let mut acc = [0u64; 5];
    for (idx, &coeff) in c.iter().enumerate() {
        let xp = 4 - idx;
        let mut term = vec![coeff];
        for _ in 0..xp {
            term = bmul(&term, &l1, p);
        }
        for _ in 0..(4 - xp) {
            term = bmul(&term, &l2, p);
        }
        for (k, v) in term.iter().enumerate() {
            acc[k] = (acc[k] + v) % p;
        }
    }
    // back to a..e, i.e. descending x-power
    [acc[4], acc[3], acc[2], acc[1], acc[0]]
}

type Ternary = BTreeMap<(u8, u8, u8), u64>;

fn tmul(f: &Ternary, g: &Ternary, p: u64) -> Ternary {
    let mut out = Ternary::new();
    for (&(a, b, c), &u) in f {
        for (&(d, e, k), &v) in g {
            let slot = out.entry((a + d, b + e, c + k)).or_insert(0);
            *slot = (*slot + mulm(u, v, p)) % p;
        }
    }
    out
}

/// `F(M (x, y, z)^T)` for a cubic given in the library's monomial order.
pub fn substitute_cubic(c: [u64; 10], m: [[u64; 3]; 3], p: u64) -> [u64; 10] {
    let linear = |row: [u64; 3]| -> Ternary {
        [((1, 0, 0), row[0]), ((0, 1, 0), row[1]), ((0, 0, 1), row[2])]
            .into_iter()
            .collect()
    };
    let ls = [linear(m[0]), linear(m[1]), linear(m[2])];
    let mut acc = Ternary::new();
    for (&(i, j, k), &coeff) in MONOMIALS.iter().zip(&c) {
        let mut term: Ternary = [((0, 0, 0), coeff)].into_iter().collect();
        for (l, e) in ls.iter().zip([i, j, k]) {
            for _ in 0..e {
                term = tmul(&term, l, p);
            }
        }
        for (mono, v) in term {
            let slot = acc.entry(mono).or_insert(0);
            *slot = (*slot + v) % p;
        }
    }
    MONOMIALS.map(|mono| acc.get(&mono).copied().unwrap_or(0))
}

pub fn det2(m: [[u64; 2]; 2], p: u64) -> u64 {
    (mulm(m[0][0], m[1][1], p) + p - mulm(m[0][1], m[1][0], p)) % p
}

pub fn det3(m: [[u64; 3]; 3], p: u64) -> u64 {
    let t = |a: usize, b: usize, c: usize| mulm(mulm(m[0][a], m[1][b], p), m[2][c], p);
    let plus = (t(0, 1, 2) + t(1, 2, 0) + t(2, 0, 1)) % p;
    let minus = (t(0, 2, 1) + t(1, 0, 2) + t(2, 1, 0)) % p;
    (plus + p - minus) % p
}

/// Scale the first row so the determinant becomes 1; `None` if singular.
pub fn to_sl2(mut m: [[u64; 2]; 2], p: u64) -> Option<[[u64; 2]; 2]> {
    let d = det2(m, p);
    if d == 0 {
        return None;
    }
    let s = invm(d, p);
    m[0] = m[0].map(|v| mulm(v, s, p));
    Some(m)
}

pub fn to_sl3(mut m: [[u64; 3]; 3], p: u64) -> Option<[[u64; 3]; 3]> {
    let d = det3(m, p);
    if d == 0 {
        return None;
    }
    let s = invm(d, p);
    m[0] = m[0].map(|v| mulm(v, s, p));
    Some(m)
}

/// Whether `f(x, z)` takes a square value (zero included) at some point of
/// `P^1(F_ℓ)`, by trying every `(x, z, y)`.
pub fn quartic_soluble_brute(c: [u64; 5], l: u64) -> bool {
    for x in 0..l {
        for z in 0..l {
            if x == 0 && z == 0 {
                continue;
            }
            let mut v = 0;
            for (idx, &k) in c.iter().enumerate() {
                let xp = 4 - idx as u32;
                v = (v + k % l * x.pow(xp) % l * z.pow(4 - xp)) % l;
            }
            if (0..l).any(|y| y * y % l == v) {
                return true;
            }
        }
    }
    false
}

pub fn cubic_eval(c: &[u64; 10], v: [u64; 3], l: u64) -> u64 {
    MONOMIALS.iter().zip(c).fold(0, |acc, (&(i, j, k), &b)| {
        let t = b % l * v[0].pow(i as u32) % l * v[1].pow(j as u32) % l * v[2].pow(k as u32) % l;
        (acc + t) % l
    })
}

/// Whether the cubic vanishes somewhere on `F_ℓ^3 \ {0}`.
pub fn cubic_soluble_brute(c: [u64; 10], l: u64) -> bool {
    (0..l).any(|x| {
        (0..l).any(|y| (0..l).any(|z| (x, y, z) != (0, 0, 0) && cubic_eval(&c, [x, y, z], l) == 0))
    })
}

/// Polynomials over `F_p`, coefficients low to high.
fn ptrim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn prem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let inv = invm(*b.last().unwrap(), p);
    while a.len() >= b.len() {
        let lead = a.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let q = mulm(lead, inv, p);
        let shift = a.len() + 1 - b.len();
        for (k, &bk) in b[..b.len() - 1].iter().enumerate() {
            a[shift + k] = (a[shift + k] + p - mulm(q, bk, p)) % p;
        }
    }
    ptrim(a)
}

fn pgcd_degree(a: Vec<u64>, b: Vec<u64>, p: u64) -> usize {
    let (mut a, mut b) = (ptrim(a), ptrim(b));
    while !b.is_empty() {
        let r = prem(a, &b, p);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// A binary quartic is singular iff it is zero or has a repeated linear
/// factor over the algebraic closure; decided by `gcd(g, g')` on the
/// dehomogenization plus a check at infinity.
pub fn quartic_singular_brute(c: [u64; 5], p: u64) -> bool {
    if c.iter().all(|&v| v == 0) {
        return true;
    }
    if c[0] == 0 && c[1] == 0 {
        return true;
    }
    let g: Vec<u64> = c.iter().rev().copied().collect();
    let g = ptrim(g);
    let dg: Vec<u64> = g.iter().enumerate().skip(1).map(|(i, &v)| mulm(i as u64, v, p)).collect();
    pgcd_degree(g, dg, p) > 0
}

/// `F_q` for `q = p^k` with lookup tables for `+` and `×`.
pub struct ExtField {
    pub q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
}

impl ExtField {
    pub fn new(p: u64, k: u32) -> Self {
        let q = p.pow(k) as usize;
        // a monic irreducible of degree k: for k <= 3, no roots suffices
        let modulus: Vec<u64> = (0..p.pow(k))
            .map(|t| {
                let mut m: Vec<u64> = (0..k).map(|i| t / p.pow(i) % p).collect();
                m.push(1);
                m
            })
            .find(|m| {
                k == 1 || (0..p).all(|x| m.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) != 0)
            })
            .expect("irreducible exists");
        let digits = |v: usize| -> Vec<u64> { (0..k).map(|i| (v as u64 / p.pow(i)) % p).collect() };
        let undigits = |d: &[u64]| -> u16 { d.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u16 };
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s);
                let mut prod = vec![0u64; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let r = if k == 1 { prod[..1].to_vec() } else { prem(prod, &modulus, p) };
                let mut r = r;
                r.resize(k as usize, 0);
                mul[a * q + b] = undigits(&r);
            }
        }
        Self { q, add, mul }
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }
}

/// `F_p`, `F_{p^2}` and `F_{p^3}`.
pub fn ext_tower(p: u64) -> Vec<ExtField> {
    (1..=3).map(|k| ExtField::new(p, k)).collect()
}

/// Whether the three partial derivatives of the cubic share a zero in
/// `P^2(F_{p^k})` for some `k <= 3`. Singular points of a plane cubic are
/// always defined over such an extension.
pub fn cubic_singular_brute(c: [u64; 10], p: u64, tower: &[ExtField]) -> bool {
    if c.iter().all(|&v| v == 0) {
        return true;
    }
    // partials as (coefficient, exponents) lists
    let partials: Vec<Vec<(u64, [u32; 3])>> = (0..3)
        .map(|var| {
            MONOMIALS
                .iter()
                .zip(&c)
                .filter_map(|(&(i, j, k), &b)| {
                    let mut e = [i as u32, j as u32, k as u32];
                    if e[var] == 0 || b == 0 {
                        return None;
                    }
                    let coeff = b * e[var] as u64 % p;
                    e[var] -= 1;
                    (coeff != 0).then_some((coeff, e))
                })
                .collect()
        })
        .collect();
    for f in tower {
        let pow = |x: u16, e: u32| (0..e).fold(1u16, |acc, _| f.mul(acc, x));
        let vanishes = |v: [u16; 3]| {
            partials.iter().all(|terms| {
                terms.iter().fold(0u16, |acc, &(coeff, e)| {
                    let t = f.mul(f.mul(f.mul(coeff as u16, pow(v[0], e[0])), pow(v[1], e[1])), pow(v[2], e[2]));
                    f.add(acc, t)
                }) == 0
            })
        };
        let q = f.q as u16;
        if vanishes([1, 0, 0]) || (0..q).any(|x| vanishes([x, 1, 0])) {
            return true;
        }
        if (0..q).any(|x| (0..q).any(|y| vanishes([x, y, 1]))) {
            return true;
        }
    }
    false
}

/// Multiplicative order of `p` mod the prime `r` via divisors of `r - 1`.
pub fn order_mod_by_divisors(p: u64, r: u64) -> u64 {
    let mut divisors: Vec<u64> = (1..=r - 1).filter(|d| (r - 1).is_multiple_of(*d)).collect();
    divisors.sort_unstable();
    *divisors.iter().find(|&&d| powm(p, d, r) == 1).expect("d = r - 1 works")
}

pub fn is_prime_naive(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}
