//! Ternary cubics `Σ b_ijk x^i y^j z^k` drawn from the `F3` stream.

mod invariants;

use serde::{Deserialize, Serialize};

use crate::arith::{poly, Fe, PrimeModulus};
use crate::config::{CubicInvariantMode, DescentConfig};
use crate::error::StageBudgetExceeded;
use crate::stream::{FieldStream, SeedContext};

pub use invariants::{Term, DEGREE_4, DEGREE_6};

/// Exponent triples `(i, j, k)` in descending lexicographic order; this is
/// the order in which coefficients are drawn and serialized.
pub const MONOMIALS: [(u8, u8, u8); 10] = [
    (3, 0, 0),
    (2, 1, 0),
    (2, 0, 1),
    (1, 2, 0),
    (1, 1, 1),
    (1, 0, 2),
    (0, 3, 0),
    (0, 2, 1),
    (0, 1, 2),
    (0, 0, 3),
];

/// Name recorded in transcripts for the ordering above.
pub const MONOMIAL_ORDER: &str = "lex_desc";

/// `c4 = λ4 S`, `c6 = λ6 T` with the constants fixed by requiring
/// `y^2 z - x^3 - A x z^2 - B z^3 ↦ (-48A, -864B)`.
pub const LAMBDA_4: i64 = 1;
pub const LAMBDA_6: i64 = -1;

const PLACEHOLDER_C4: &[u8] = b"C3_c4";
const PLACEHOLDER_C6: &[u8] = b"C3_c6";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryCubic {
    pub coeffs: [Fe; 10],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicInvariants {
    pub s: Fe,
    pub t: Fe,
    pub c4: Fe,
    pub c6: Fe,
}

impl CubicInvariants {
    /// `S^3 - T^2`, proportional to the discriminant of the cubic. Equal to
    /// `c4^3 - c6^2` under the classical normalization.
    pub fn disc(&self) -> Fe {
        &self.s.pow_u64(3) - &self.t.square()
    }

    pub fn is_singular(&self) -> bool {
        self.disc().is_zero()
    }
}

pub fn sample_cubic<S: FieldStream>(stream: &mut S) -> TernaryCubic {
    TernaryCubic {
        coeffs: std::array::from_fn(|_| stream.next_element()),
    }
}

fn eval_terms(terms: &[Term], coeffs: &[Fe; 10]) -> Fe {
    let m = coeffs[0].modulus();
    let powers: Vec<[Fe; 7]> = coeffs
        .iter()
        .map(|c| {
            let mut p: [Fe; 7] = std::array::from_fn(|_| m.one());
            for e in 1..7 {
                p[e] = &p[e - 1] * c;
            }
            p
        })
        .collect();
    terms.iter().fold(m.zero(), |acc, (k, exps)| {
        let mut prod = m.from_i64(*k);
        for (idx, &e) in exps.iter().enumerate() {
            if e > 0 {
                prod = &prod * &powers[idx][e as usize];
            }
        }
        &acc + &prod
    })
}

impl TernaryCubic {
    pub fn from_u64(field: &PrimeModulus, v: [u64; 10]) -> Self {
        Self {
            coeffs: v.map(|x| field.elem(x)),
        }
    }

    pub fn modulus(&self) -> &PrimeModulus {
        self.coeffs[0].modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Fe::is_zero)
    }

    pub fn eval(&self, x: &Fe, y: &Fe, z: &Fe) -> Fe {
        let m = self.modulus();
        let pw = |v: &Fe| [m.one(), v.clone(), v.square(), v.pow_u64(3)];
        let (px, py, pz) = (pw(x), pw(y), pw(z));
        MONOMIALS
            .iter()
            .zip(&self.coeffs)
            .fold(m.zero(), |acc, (&(i, j, k), c)| {
                &acc + &(&(c * &px[i as usize]) * &(&py[j as usize] * &pz[k as usize]))
            })
    }

    /// Degree-4 invariant `S`.
    pub fn s_invariant(&self) -> Fe {
        eval_terms(&DEGREE_4, &self.coeffs)
    }

    /// Degree-6 invariant `T`.
    pub fn t_invariant(&self) -> Fe {
        eval_terms(&DEGREE_6, &self.coeffs)
    }

    /// Classical `(S, T, c4, c6)`.
    pub fn invariants(&self) -> CubicInvariants {
        let m = self.modulus();
        let s = self.s_invariant();
        let t = self.t_invariant();
        let c4 = &m.from_i64(LAMBDA_4) * &s;
        let c6 = &m.from_i64(LAMBDA_6) * &t;
        CubicInvariants { s, t, c4, c6 }
    }

    /// Invariants under `mode`; the placeholder mode replaces `(c4, c6)` by
    /// hashes of the coefficient vector and keeps the classical `S, T`.
    pub fn invariants_with(&self, mode: CubicInvariantMode, ctx: &SeedContext) -> CubicInvariants {
        let mut inv = self.invariants();
        if mode == CubicInvariantMode::HashPlaceholder {
            inv.c4 = ctx.mix_many(PLACEHOLDER_C4, &self.coeffs);
            inv.c6 = ctx.mix_many(PLACEHOLDER_C6, &self.coeffs);
        }
        inv
    }

    /// `F(x, y, 1)` as a polynomial in `y`, coefficients low to high.
    fn slice_at(&self, x: &Fe) -> [Fe; 4] {
        let m = self.modulus();
        let px = [m.one(), x.clone(), x.square(), x.pow_u64(3)];
        let mut g: [Fe; 4] = std::array::from_fn(|_| m.zero());
        for (&(i, j, _), c) in MONOMIALS.iter().zip(&self.coeffs) {
            g[j as usize] = &g[j as usize] + &(c * &px[i as usize]);
        }
        g
    }

    /// Exhaustive scan of `P^2(F_ℓ)` for a zero of the reduced form.
    pub fn soluble_mod_ell(&self, ell: u64) -> bool {
        let c = self.coeffs.clone().map(|v| v.lift_mod(ell));
        let eval = |x: u64, y: u64, z: u64| {
            let pw = |v: u64| [1, v % ell, v * v % ell, v * v % ell * v % ell];
            let (px, py, pz) = (pw(x), pw(y), pw(z));
            MONOMIALS.iter().zip(&c).fold(0u64, |acc, (&(i, j, k), &b)| {
                (acc + b * px[i as usize] % ell * py[j as usize] % ell * pz[k as usize]) % ell
            })
        };
        if eval(1, 0, 0) == 0 {
            return true;
        }
        if (0..ell).any(|x| eval(x, 1, 0) == 0) {
            return true;
        }
        (0..ell).any(|x| (0..ell).any(|y| eval(x, y, 1) == 0))
    }

    /// Bounded search for a projective zero over `F_p`: the point `(1:0:0)`,
    /// the line `z = 0`, then lines `x = const` in the chart `z = 1`.
    /// Each line is decided exactly by a root-existence test.
    pub fn soluble_over_fp<S: FieldStream>(&self, bound: u64, u: &mut S) -> bool {
        let m = self.modulus();
        if self.coeffs[0].is_zero() {
            return true;
        }
        // F(x, 1, 0) = b300 x^3 + b210 x^2 + b120 x + b030
        let at_infinity = [
            self.coeffs[6].clone(),
            self.coeffs[3].clone(),
            self.coeffs[1].clone(),
            self.coeffs[0].clone(),
        ];
        if poly::has_root(&at_infinity, m) {
            return true;
        }
        match m.to_u64() {
            Some(p) if bound >= p => (0..p).any(|x| poly::has_root(&self.slice_at(&m.elem(x)), m)),
            _ => (0..bound).any(|_| {
                let x = u.next_element();
                poly::has_root(&self.slice_at(&x), m)
            }),
        }
    }
}

/// Local-solubility proxy: exhaustive over every `F_ℓ`, bounded over `F_p`.
pub fn cubic_locally_soluble<S: FieldStream>(
    f: &TernaryCubic,
    ell_set: &[u64],
    search_bound: u64,
    u: &mut S,
) -> bool {
    ell_set.iter().all(|&l| f.soluble_mod_ell(l)) && f.soluble_over_fp(search_bound, u)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicRejections {
    pub singular: u64,
    pub insoluble: u64,
}

impl CubicRejections {
    pub fn total(&self) -> u64 {
        self.singular + self.insoluble
    }
}

pub fn accept_cubic<S: FieldStream, U: FieldStream>(
    f3: &mut S,
    u: &mut U,
    ctx: &SeedContext,
    config: &DescentConfig,
    rejections: &mut CubicRejections,
) -> Result<(TernaryCubic, CubicInvariants), StageBudgetExceeded> {
    for _ in 0..config.stage_budget {
        let f = sample_cubic(f3);
        let inv = f.invariants_with(config.cubic_mode, ctx);
        // the zero form has S = T = 0 and lands here
        if inv.is_singular() {
            rejections.singular += 1;
            continue;
        }
        if !cubic_locally_soluble(&f, &config.ell_set, config.cubic_search_bound, u) {
            rejections.insoluble += 1;
            continue;
        }
        return Ok((f, inv));
    }
    Err(StageBudgetExceeded {
        stage: "cubic",
        budget: config.stage_budget,
    })
}
