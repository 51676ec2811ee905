//! Prime fields `F_p` with canonically reduced elements.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::primes::is_prime;
use crate::error::FieldError;

#[derive(Debug, PartialEq, Eq, Hash)]
struct ModulusInner {
    p: BigUint,
    bit_len: u64,
    byte_width: usize,
    is_3_mod_4: bool,
}

/// An odd prime `p >= 5` together with its encoding width.
///
/// Cloning is cheap; the modulus is shared behind an `Arc`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimeModulus {
    inner: Arc<ModulusInner>,
}

impl PrimeModulus {
    pub fn new(p: BigUint) -> Result<Self, FieldError> {
        if p < BigUint::from(5u32) {
            return Err(FieldError::ModulusTooSmall(p));
        }
        if !is_prime(&p) {
            return Err(FieldError::NotPrime(p));
        }
        let bit_len = p.bits();
        let byte_width = bit_len.div_ceil(8) as usize;
        let is_3_mod_4 = (&p % 4u32) == BigUint::from(3u32);
        Ok(Self {
            inner: Arc::new(ModulusInner {
                p,
                bit_len,
                byte_width,
                is_3_mod_4,
            }),
        })
    }

    pub fn from_u64(p: u64) -> Result<Self, FieldError> {
        Self::new(BigUint::from(p))
    }

    pub fn p(&self) -> &BigUint {
        &self.inner.p
    }

    pub fn bit_len(&self) -> u64 {
        self.inner.bit_len
    }

    /// Number of bytes in the fixed-width big-endian element encoding.
    pub fn byte_width(&self) -> usize {
        self.inner.byte_width
    }

    /// Whether `p ≡ 3 (mod 4)`, the default admissibility policy.
    pub fn is_3_mod_4(&self) -> bool {
        self.inner.is_3_mod_4
    }

    /// `p` as a `u64` when it fits.
    pub fn to_u64(&self) -> Option<u64> {
        self.inner.p.to_u64()
    }

    pub fn zero(&self) -> Fe {
        Fe::from_reduced(BigUint::zero(), self.clone())
    }

    pub fn one(&self) -> Fe {
        Fe::from_reduced(BigUint::one(), self.clone())
    }

    pub fn elem(&self, v: u64) -> Fe {
        self.reduce(&BigUint::from(v))
    }

    /// Signed constant reduced into `[0, p)`.
    pub fn from_i64(&self, v: i64) -> Fe {
        self.reduce_signed(&BigInt::from(v))
    }

    pub fn reduce(&self, v: &BigUint) -> Fe {
        Fe::from_reduced(v % self.p(), self.clone())
    }

    pub fn reduce_signed(&self, v: &BigInt) -> Fe {
        let p = BigInt::from_biguint(Sign::Plus, self.p().clone());
        let r = v.mod_floor(&p);
        Fe::from_reduced(r.to_biguint().expect("mod_floor is non-negative"), self.clone())
    }

    /// Element from an already reduced value; fails if `v >= p`.
    pub fn checked_elem(&self, v: BigUint) -> Result<Fe, FieldError> {
        if &v >= self.p() {
            return Err(FieldError::NotReduced(v));
        }
        Ok(Fe::from_reduced(v, self.clone()))
    }

    fn same(&self, other: &PrimeModulus) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.p == other.inner.p
    }
}

impl fmt::Debug for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeModulus({})", self.inner.p)
    }
}

/// An element of `F_p`, always stored in `[0, p)`.
#[derive(Clone)]
pub struct Fe {
    value: BigUint,
    modulus: PrimeModulus,
}

impl Fe {
    fn from_reduced(value: BigUint, modulus: PrimeModulus) -> Self {
        debug_assert!(&value < modulus.p());
        Self { value, modulus }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn modulus(&self) -> &PrimeModulus {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    fn check(&self, other: &Fe) -> Result<(), FieldError> {
        if self.modulus.same(&other.modulus) {
            Ok(())
        } else {
            Err(FieldError::ModulusMismatch)
        }
    }

    pub fn try_add(&self, other: &Fe) -> Result<Fe, FieldError> {
        self.check(other)?;
        let mut v = &self.value + &other.value;
        if &v >= self.modulus.p() {
            v -= self.modulus.p();
        }
        Ok(Fe::from_reduced(v, self.modulus.clone()))
    }

    pub fn try_sub(&self, other: &Fe) -> Result<Fe, FieldError> {
        self.check(other)?;
        let v = if self.value >= other.value {
            &self.value - &other.value
        } else {
            self.modulus.p() - &other.value + &self.value
        };
        Ok(Fe::from_reduced(v, self.modulus.clone()))
    }

    pub fn try_mul(&self, other: &Fe) -> Result<Fe, FieldError> {
        self.check(other)?;
        Ok(Fe::from_reduced(
            (&self.value * &other.value) % self.modulus.p(),
            self.modulus.clone(),
        ))
    }

    pub fn try_div(&self, other: &Fe) -> Result<Fe, FieldError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(&self) -> Result<Fe, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let e = self.modulus.p() - 2u32;
        Ok(self.pow(&e))
    }

    pub fn pow(&self, e: &BigUint) -> Fe {
        Fe::from_reduced(
            self.value.modpow(e, self.modulus.p()),
            self.modulus.clone(),
        )
    }

    pub fn pow_u64(&self, e: u64) -> Fe {
        self.pow(&BigUint::from(e))
    }

    pub fn square(&self) -> Fe {
        self * self
    }

    /// Legendre symbol `(a / p)` computed as `a^((p-1)/2)`.
    pub fn legendre(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let e = (self.modulus.p() - 1u32) >> 1;
        if self.value.modpow(&e, self.modulus.p()).is_one() {
            1
        } else {
            -1
        }
    }

    /// Square root, or `None` when `self` is a non-residue.
    ///
    /// Uses the `(p+1)/4` exponent when `p ≡ 3 (mod 4)` and Tonelli–Shanks
    /// otherwise.
    pub fn sqrt(&self) -> Option<Fe> {
        match self.legendre() {
            0 => return Some(self.clone()),
            -1 => return None,
            _ => {}
        }
        let p = self.modulus.p();
        let root = if self.modulus.is_3_mod_4() {
            self.pow(&((p + 1u32) >> 2))
        } else {
            self.tonelli_shanks()
        };
        debug_assert!(root.square() == *self);
        Some(root)
    }

    fn tonelli_shanks(&self) -> Fe {
        let m = &self.modulus;
        let p_minus_one = m.p() - 1u32;
        let s = p_minus_one.trailing_zeros().expect("p - 1 is non-zero");
        let q = &p_minus_one >> s;

        let mut z = m.elem(2);
        while z.legendre() != -1 {
            z = &z + &m.one();
        }

        let mut c = z.pow(&q);
        let mut t = self.pow(&q);
        let mut r = self.pow(&((&q + 1u32) >> 1));
        let mut order = s;
        while !t.is_one() {
            // least i with t^(2^i) = 1
            let mut i = 0;
            let mut t2 = t.clone();
            while !t2.is_one() {
                t2 = t2.square();
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(order - i - 1) {
                b = b.square();
            }
            order = i;
            c = b.square();
            t = &t * &c;
            r = &r * &b;
        }
        r
    }

    /// Fixed-width big-endian encoding using the modulus byte width.
    pub fn to_bytes_fixed(&self) -> Vec<u8> {
        let width = self.modulus.byte_width();
        let raw = self.value.to_bytes_be();
        let mut out = vec![0u8; width];
        if !self.value.is_zero() {
            out[width - raw.len()..].copy_from_slice(&raw);
        }
        out
    }

    /// Reduction of the canonical lift modulo a small integer.
    pub fn lift_mod(&self, m: u64) -> u64 {
        (&self.value % m).to_u64().expect("residue fits in u64")
    }
}

impl PartialEq for Fe {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.modulus.same(&other.modulus)
    }
}

impl Eq for Fe {}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fe({} mod {})", self.value, self.modulus.p())
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// Operator forms panic on modulus mismatch; use the `try_*` methods where
// operands may come from different fields.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, 'b> $tr<&'b Fe> for &'a Fe {
            type Output = Fe;
            fn $method(self, rhs: &'b Fe) -> Fe {
                self.$checked(rhs).expect("field elements from different moduli")
            }
        }
        impl $tr<Fe> for Fe {
            type Output = Fe;
            fn $method(self, rhs: Fe) -> Fe {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $tr<&'b Fe> for Fe {
            type Output = Fe;
            fn $method(self, rhs: &'b Fe) -> Fe {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Fe> for &'a Fe {
            type Output = Fe;
            fn $method(self, rhs: Fe) -> Fe {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        if self.is_zero() {
            self.clone()
        } else {
            Fe::from_reduced(self.modulus.p() - &self.value, self.modulus.clone())
        }
    }
}

impl Neg for Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeModulus {
        PrimeModulus::from_u64(p).unwrap()
    }

    #[test]
    fn wraparound_and_inverse() {
        let m = f(100003);
        assert!((m.elem(100002) + m.elem(1)).is_zero());
        let two = m.elem(2);
        assert!((&two * &two.inv().unwrap()).is_one());
        assert_eq!(m.zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn fermat_matches_plain_modexp() {
        let m = f(100003);
        assert!(m.elem(3).pow_u64(100002).is_one());
        // square-and-multiply over u64, written out independently
        let (mut acc, mut base, mut e) = (1u64, 3u64, 100002u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % 100003;
            }
            base = base * base % 100003;
            e >>= 1;
        }
        assert_eq!(acc, 1);
    }

    #[test]
    fn legendre_small() {
        let m = f(7);
        assert_eq!(m.zero().legendre(), 0);
        assert_eq!(m.elem(4).legendre(), 1);
        assert_eq!(m.elem(3).legendre(), -1);
        let squares: Vec<u64> = (1..7).filter(|&x| m.elem(x).legendre() == 1).collect();
        assert_eq!(squares, vec![1, 2, 4]);
    }

    #[test]
    fn sqrt_small_and_tonelli() {
        let m = f(7);
        let r = m.elem(2).sqrt().unwrap();
        assert!(r == m.elem(3) || r == m.elem(4));
        assert!(m.elem(3).sqrt().is_none());
        assert!(m.zero().sqrt().unwrap().is_zero());

        // p ≡ 1 mod 8 exercises the Tonelli–Shanks loop
        let m = f(97);
        for x in 0..97u64 {
            let sq = m.elem(x).square();
            let r = sq.sqrt().unwrap();
            assert!(r == m.elem(x) || r == -m.elem(x));
        }
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = f(7).elem(3);
        let b = f(11).elem(3);
        assert_eq!(a.try_add(&b), Err(FieldError::ModulusMismatch));
        assert_eq!(a.try_mul(&b), Err(FieldError::ModulusMismatch));
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(PrimeModulus::from_u64(3).is_err());
        assert!(PrimeModulus::from_u64(100001).is_err());
        let m = f(100003);
        assert_eq!(m.byte_width(), 3);
        assert_eq!(m.bit_len(), 17);
        assert!(m.is_3_mod_4());
    }

    #[test]
    fn fixed_width_encoding() {
        let m = f(100003);
        assert_eq!(m.elem(0).to_bytes_fixed(), vec![0, 0, 0]);
        assert_eq!(m.elem(0x1_86a2).to_bytes_fixed(), vec![0x01, 0x86, 0xa2]);
    }
}
