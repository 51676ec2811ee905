//! Binary quartics `a x^4 + b x^3 z + c x^2 z^2 + d x z^3 + e z^4` drawn
//! from the `F2` stream.

use serde::{Deserialize, Serialize};

use crate::arith::{Fe, PrimeModulus};
use crate::config::DescentConfig;
use crate::error::StageBudgetExceeded;
use crate::stream::FieldStream;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryQuartic {
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub d: Fe,
    pub e: Fe,
}

/// `I`, `J` and the normalized pair `c4 = 16 I`, `c6 = 32 J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticInvariants {
    pub i: Fe,
    pub j: Fe,
    pub c4: Fe,
    pub c6: Fe,
}

impl QuarticInvariants {
    /// `4 I^3 - J^2`, which is 27 times the discriminant of the quartic.
    pub fn disc_numerator(&self) -> Fe {
        let m = self.i.modulus();
        &(&m.elem(4) * &self.i.pow_u64(3)) - &self.j.square()
    }

    /// Exact for `p > 3`.
    pub fn is_singular(&self) -> bool {
        self.disc_numerator().is_zero()
    }
}

/// Draw `a, b, c, d, e` as five successive stream elements.
pub fn sample_quartic<S: FieldStream>(stream: &mut S) -> BinaryQuartic {
    let a = stream.next_element();
    let b = stream.next_element();
    let c = stream.next_element();
    let d = stream.next_element();
    let e = stream.next_element();
    BinaryQuartic { a, b, c, d, e }
}

impl BinaryQuartic {
    pub fn from_coeffs(coeffs: [Fe; 5]) -> Self {
        let [a, b, c, d, e] = coeffs;
        Self { a, b, c, d, e }
    }

    pub fn from_u64(field: &PrimeModulus, v: [u64; 5]) -> Self {
        Self::from_coeffs(v.map(|x| field.elem(x)))
    }

    pub fn coeffs(&self) -> [&Fe; 5] {
        [&self.a, &self.b, &self.c, &self.d, &self.e]
    }

    pub fn modulus(&self) -> &PrimeModulus {
        self.a.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_zero())
    }

    /// `f(x, 1)`.
    pub fn eval_affine(&self, x: &Fe) -> Fe {
        let mut acc = self.a.clone();
        for c in [&self.b, &self.c, &self.d, &self.e] {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `I = 12ae - 3bd + c^2`, `J = 72ace + 9bcd - 27ad^2 - 27b^2e - 2c^3`.
    pub fn invariants(&self) -> QuarticInvariants {
        let m = self.modulus();
        let k = |v: i64| m.from_i64(v);
        let (a, b, c, d, e) = (&self.a, &self.b, &self.c, &self.d, &self.e);

        let i = &(&(&k(12) * &(a * e)) - &(&k(3) * &(b * d))) + &c.square();
        let j = &k(72) * &(&(a * c) * e) + &k(9) * &(&(b * c) * d)
            - &k(27) * &(a * &d.square())
            - &k(27) * &(&b.square() * e)
            - &k(2) * &c.pow_u64(3);
        let c4 = &k(16) * &i;
        let c6 = &k(32) * &j;
        QuarticInvariants { i, j, c4, c6 }
    }

    /// Whether `f = q^2` for a binary quadratic form `q` over `F_p`.
    pub fn is_perfect_square(&self) -> bool {
        let m = self.modulus();
        let two = m.elem(2);
        let (a, b, c, d, e) = (&self.a, &self.b, &self.c, &self.d, &self.e);
        if !a.is_zero() {
            // q = αx^2 + βxz + γz^2 with α^2 = a
            let Some(alpha) = a.sqrt() else {
                return false;
            };
            let two_alpha_inv = (&two * &alpha).inv().expect("alpha is non-zero");
            let beta = b * &two_alpha_inv;
            let gamma = &(c - &beta.square()) * &two_alpha_inv;
            return &(&two * &beta) * &gamma == *d && gamma.square() == *e;
        }
        if !b.is_zero() {
            return false;
        }
        // q = βxz + γz^2
        if !c.is_zero() {
            let Some(beta) = c.sqrt() else {
                return false;
            };
            let gamma = d * &(&two * &beta).inv().expect("beta is non-zero");
            return gamma.square() == *e;
        }
        d.is_zero() && e.legendre() >= 0
    }

    /// Exhaustive scan of `P^1(F_ℓ)` for a point where the reduced quartic
    /// takes a square value (zero included).
    pub fn soluble_mod_ell(&self, ell: u64) -> bool {
        let red = self.coeffs().map(|c| c.lift_mod(ell));
        quartic_square_value_mod(red, ell)
    }

    /// Bounded search for a point on `y^2 = f(x, 1)` over `F_p`, including the
    /// point at infinity (`a` a square) and `x = 0`.
    ///
    /// When `bound >= p` every abscissa is tried directly; otherwise `bound`
    /// abscissae are drawn from `u`, stopping at the first hit.
    pub fn soluble_over_fp<S: FieldStream>(&self, bound: u64, u: &mut S) -> bool {
        if self.a.legendre() >= 0 || self.e.legendre() >= 0 {
            return true;
        }
        let m = self.modulus();
        match m.to_u64() {
            Some(p) if bound >= p => (1..p).any(|x| self.eval_affine(&m.elem(x)).legendre() >= 0),
            _ => (0..bound).any(|_| {
                let x = u.next_element();
                self.eval_affine(&x).legendre() >= 0
            }),
        }
    }
}

pub(crate) fn squares_mod(ell: u64) -> Vec<bool> {
    let mut sq = vec![false; ell as usize];
    for y in 0..ell {
        sq[(y * y % ell) as usize] = true;
    }
    sq
}

fn quartic_square_value_mod(c: [u64; 5], ell: u64) -> bool {
    let sq = squares_mod(ell);
    // (1 : 0)
    if sq[c[0] as usize] {
        return true;
    }
    (0..ell).any(|x| {
        let v = c.iter().fold(0u64, |acc, &k| (acc * x + k) % ell);
        sq[v as usize]
    })
}

/// Local-solubility proxy: a point over `F_p` by bounded search and over
/// every `F_ℓ` by exhaustive scan.
pub fn quartic_locally_soluble<S: FieldStream>(
    f: &BinaryQuartic,
    ell_set: &[u64],
    search_bound: u64,
    u: &mut S,
) -> bool {
    f.soluble_over_fp(search_bound, u) && ell_set.iter().all(|&l| f.soluble_mod_ell(l))
}

/// Per-cause rejection counts for the quartic stage.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarticRejections {
    pub zero_or_square: u64,
    pub singular: u64,
    pub insoluble: u64,
}

impl QuarticRejections {
    pub fn total(&self) -> u64 {
        self.zero_or_square + self.singular + self.insoluble
    }
}

/// Sample until a form survives every rejection rule, adding to `rejections`.
pub fn accept_quartic<S: FieldStream, U: FieldStream>(
    f2: &mut S,
    u: &mut U,
    config: &DescentConfig,
    rejections: &mut QuarticRejections,
) -> Result<(BinaryQuartic, QuarticInvariants), StageBudgetExceeded> {
    for _ in 0..config.stage_budget {
        let f = sample_quartic(f2);
        if f.is_zero() || f.is_perfect_square() {
            rejections.zero_or_square += 1;
            continue;
        }
        let inv = f.invariants();
        if inv.is_singular() {
            rejections.singular += 1;
            continue;
        }
        if !quartic_locally_soluble(&f, &config.ell_set, config.quartic_search_bound, u) {
            rejections.insoluble += 1;
            continue;
        }
        return Ok((f, inv));
    }
    Err(StageBudgetExceeded {
        stage: "quartic",
        budget: config.stage_budget,
    })
}
