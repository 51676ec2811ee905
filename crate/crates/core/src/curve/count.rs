use std::fmt;
use std::io::Write;
use std::process::{Command, Stdio};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use super::{smallest_nonresidue, ShortWeierstrass};
use crate::arith::{factorize, Factorization, PrimeModulus};
use crate::error::{CountError, FactorError};

/// Largest bit length handled by the built-in Legendre-sum counter.
pub const DEFAULT_BUILTIN_MAX_BITS: u64 = 26;

/// Hard ceiling for the built-in counter; its residue table has `p` bits.
const BUILTIN_CEILING_BITS: u64 = 32;

/// Group orders of a curve and its quadratic twist, with their
/// factorizations. `r` is the largest prime factor of `n` and `h = n / r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderData {
    pub n: BigUint,
    pub trace: BigInt,
    pub n_twist: BigUint,
    pub factors: Factorization,
    pub twist_factors: Factorization,
    pub r: BigUint,
    pub h: BigUint,
    pub r_twist: BigUint,
    pub h_twist: BigUint,
    /// Non-residue `g` defining the twist model.
    pub twist_nonresidue: BigUint,
}

impl OrderData {
    pub fn is_complete(&self) -> bool {
        self.factors.cofactor_complete && self.twist_factors.cofactor_complete
    }

    /// `|t| <= 2 sqrt(p)`, checked as `t^2 <= 4p`.
    pub fn satisfies_hasse(&self, p: &BigUint) -> bool {
        hasse_holds(p, &self.n)
    }
}

/// Whether `n` lies in the Hasse interval around `p + 1`.
pub fn hasse_holds(p: &BigUint, n: &BigUint) -> bool {
    let t = BigInt::from(p + 1u32) - BigInt::from(n.clone());
    let t2 = t.magnitude() * t.magnitude();
    t2 <= p * 4u32
}

fn factor_lenient(n: &BigUint) -> Factorization {
    match factorize(n) {
        Ok(f) => f,
        Err(FactorError::WorkBoundExceeded(partial)) => partial,
        Err(FactorError::Zero) => unreachable!("group orders are positive"),
    }
}

fn split_largest(n: &BigUint, f: &Factorization) -> (BigUint, BigUint) {
    let r = f.largest_prime().cloned().unwrap_or_else(BigUint::one);
    let h = n / &r;
    (r, h)
}

/// Fill in the trace, twist order and both factorizations from `#E = n`.
///
/// # Panics
///
/// If `n` is outside the Hasse interval; see [`hasse_holds`].
pub fn order_data(modulus: &PrimeModulus, n: BigUint) -> OrderData {
    let p = modulus.p();
    let trace = BigInt::from(p + 1u32) - BigInt::from(n.clone());
    let n_twist = (p * 2u32 + 2u32) - &n;
    let factors = factor_lenient(&n);
    let twist_factors = factor_lenient(&n_twist);
    let (r, h) = split_largest(&n, &factors);
    let (r_twist, h_twist) = split_largest(&n_twist, &twist_factors);
    OrderData {
        n,
        trace,
        n_twist,
        factors,
        twist_factors,
        r,
        h,
        r_twist,
        h_twist,
        twist_nonresidue: smallest_nonresidue(modulus).value().clone(),
    }
}

/// A source of `#E(F_p)` for `y^2 = x^3 + A x + B`.
pub trait PointCounter: Send + Sync {
    fn count(&self, p: &BigUint, a: &BigUint, b: &BigUint) -> Result<BigUint, CountError>;

    /// Recorded in transcripts as the counter's identity.
    fn describe(&self) -> String {
        "external".to_owned()
    }
}

/// Subprocess counter: writes `p`, `A`, `B` as decimal lines to stdin and
/// reads `N` as a decimal line from stdout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalCounter {
    program: String,
    args: Vec<String>,
}

impl ExternalCounter {
    pub fn new(program: impl Into<String>, args: Vec<String>) -> Self {
        Self {
            program: program.into(),
            args,
        }
    }

    /// Split a command line on whitespace.
    pub fn from_command_line(cmd: &str) -> Option<Self> {
        let mut parts = cmd.split_whitespace().map(str::to_owned);
        let program = parts.next()?;
        Some(Self::new(program, parts.collect()))
    }

    pub fn command_line(&self) -> String {
        std::iter::once(self.program.as_str())
            .chain(self.args.iter().map(String::as_str))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl PointCounter for ExternalCounter {
    fn count(&self, p: &BigUint, a: &BigUint, b: &BigUint) -> Result<BigUint, CountError> {
        let err = |m: String| CountError::External(format!("{}: {m}", self.program));
        let mut child = Command::new(&self.program)
            .args(&self.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(|e| err(e.to_string()))?;
        {
            let mut stdin = child.stdin.take().expect("piped stdin");
            writeln!(stdin, "{p}\n{a}\n{b}").map_err(|e| err(e.to_string()))?;
        }
        let out = child.wait_with_output().map_err(|e| err(e.to_string()))?;
        if !out.status.success() {
            return Err(err(format!("exited with {}", out.status)));
        }
        let text = String::from_utf8(out.stdout).map_err(|e| err(e.to_string()))?;
        let line = text.lines().next().unwrap_or("").trim();
        line.parse::<BigUint>()
            .map_err(|_| err(format!("expected a decimal point count, got `{line}`")))
    }

    fn describe(&self) -> String {
        format!("external: {}", self.command_line())
    }
}

/// Counting policy: the built-in counter up to a bit bound, an optional
/// external counter above it.
#[derive(Clone)]
pub struct PointCounting {
    pub builtin_max_bits: u64,
    pub external: Option<Arc<dyn PointCounter>>,
}

impl Default for PointCounting {
    fn default() -> Self {
        Self {
            builtin_max_bits: DEFAULT_BUILTIN_MAX_BITS,
            external: None,
        }
    }
}

impl fmt::Debug for PointCounting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PointCounting")
            .field("builtin_max_bits", &self.builtin_max_bits)
            .field("external", &self.external.is_some())
            .finish()
    }
}

impl PointCounting {
    pub fn with_external(counter: impl PointCounter + 'static) -> Self {
        Self {
            external: Some(Arc::new(counter)),
            ..Self::default()
        }
    }

    fn builtin_handles(&self, bits: u64) -> bool {
        bits <= self.builtin_max_bits.min(BUILTIN_CEILING_BITS)
    }

    /// Which counter handles a prime of `bits` bits.
    pub fn source_for(&self, bits: u64) -> String {
        match &self.external {
            _ if self.builtin_handles(bits) => "builtin".to_owned(),
            Some(ext) => ext.describe(),
            None => "unavailable".to_owned(),
        }
    }

    /// `#E(F_p)`, from the built-in counter when `p` is small enough and from
    /// the external counter otherwise.
    pub fn count(&self, curve: &ShortWeierstrass) -> Result<BigUint, CountError> {
        let m = curve.modulus();
        let bits = m.bit_len();
        let max_bits = self.builtin_max_bits.min(BUILTIN_CEILING_BITS);
        if self.builtin_handles(bits) {
            return Ok(BigUint::from(legendre_sum_count(curve)));
        }
        let Some(ext) = &self.external else {
            return Err(CountError::CountingUnavailable {
                bits,
                max_bits,
            });
        };
        let n = ext.count(m.p(), curve.a.value(), curve.b.value())?;
        if !hasse_holds(m.p(), &n) {
            return Err(CountError::HasseViolation { n });
        }
        Ok(n)
    }
}

/// `N = p + 1 + Σ_x (x^3 + a x + b | p)` using a table of quadratic residues.
///
/// Panics if `p` does not fit in 32 bits.
pub fn legendre_sum_count(curve: &ShortWeierstrass) -> u64 {
    let p = curve.modulus().to_u64().filter(|&p| p < 1 << 32).expect("p below 2^32");
    let a = curve.a.value().to_u64().expect("reduced");
    let b = curve.b.value().to_u64().expect("reduced");

    let words = (p as usize).div_ceil(64);
    let mut residue = vec![0u64; words];
    for y in 1..=(p - 1) / 2 {
        let v = (y * y % p) as usize;
        residue[v / 64] |= 1 << (v % 64);
    }

    let mut sum: i64 = 0;
    for x in 0..p {
        let x2 = x * x % p;
        let v = ((x2 + a) % p * x % p + b) % p;
        if v == 0 {
            continue;
        }
        let v = v as usize;
        if residue[v / 64] >> (v % 64) & 1 == 1 {
            sum += 1;
        } else {
            sum -= 1;
        }
    }
    (p as i64 + 1 + sum) as u64
}

/// Count `#E(F_p)` for the curve and assemble its [`OrderData`].
pub fn count_points_with(
    curve: &ShortWeierstrass,
    counting: &PointCounting,
) -> Result<OrderData, CountError> {
    let n = counting.count(curve)?;
    Ok(order_data(curve.modulus(), n))
}

/// [`count_points_with`] using the default built-in counter only.
pub fn count_points(curve: &ShortWeierstrass) -> Result<OrderData, CountError> {
    count_points_with(curve, &PointCounting::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_curve() {
        let m = PrimeModulus::from_u64(100003).unwrap();
        let e = ShortWeierstrass::new(m.from_i64(-27 * 82765), m.from_i64(-54 * 79541));
        let od = count_points(&e).unwrap();
        assert_eq!(od.n, BigUint::from(99711u32));
        assert_eq!(od.n_twist, BigUint::from(100297u32));
        assert_eq!(od.h, BigUint::from(81u32));
        assert_eq!(od.r, BigUint::from(1231u32));
        assert_eq!(od.h_twist, BigUint::from(1u32));
        assert_eq!(od.r_twist, BigUint::from(100297u32));
        assert_eq!(od.trace, BigInt::from(293));
        assert!(od.satisfies_hasse(m.p()));
    }

    #[test]
    fn small_curve_by_enumeration() {
        // y^2 = x^3 + x over F_7: (0,0), (1,±3), (3,±3), (5,±2) and O
        let m = PrimeModulus::from_u64(7).unwrap();
        let e = ShortWeierstrass::new(m.elem(1), m.elem(0));
        assert_eq!(legendre_sum_count(&e), 8);
    }

    #[test]
    fn unavailable_above_bound() {
        let m = PrimeModulus::from_u64(100003).unwrap();
        let e = ShortWeierstrass::new(m.elem(1), m.elem(1));
        let counting = PointCounting {
            builtin_max_bits: 10,
            external: None,
        };
        assert!(matches!(
            counting.count(&e),
            Err(CountError::CountingUnavailable { bits: 17, max_bits: 10 })
        ));
    }

    struct Liar;
    impl PointCounter for Liar {
        fn count(&self, _: &BigUint, _: &BigUint, _: &BigUint) -> Result<BigUint, CountError> {
            Ok(BigUint::from(5u32))
        }
    }

    #[test]
    fn external_result_must_respect_hasse() {
        let m = PrimeModulus::from_u64(100003).unwrap();
        let e = ShortWeierstrass::new(m.elem(1), m.elem(1));
        let counting = PointCounting {
            builtin_max_bits: 0,
            external: Some(Arc::new(Liar)),
        };
        assert!(matches!(counting.count(&e), Err(CountError::HasseViolation { .. })));
    }
}
