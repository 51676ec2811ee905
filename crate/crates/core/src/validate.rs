//! Acceptance filters: order and cofactor, twist order, anomalous traces,
//! small CM discriminants and small embedding degrees.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime, Factorization, PrimeModulus};
use crate::curve::OrderData;
use crate::error::{FactorError, ValidateError};
use crate::reconcile::CurveParams;
use crate::transcript::hexfmt;

/// Bit length from which [`Policy::for_modulus`] picks the strict profile.
pub const STRICT_FROM_BITS: u64 = 224;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    /// Cofactor in a small allowed set and `r` close to the size of `p`.
    Strict,
    /// Any cofactor as long as the prime part exceeds `sqrt(p)`.
    Demo,
}

impl Profile {
    pub fn as_str(self) -> &'static str {
        match self {
            Profile::Strict => "strict",
            Profile::Demo => "demo",
        }
    }
}

impl std::str::FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(Profile::Strict),
            "demo" => Ok(Profile::Demo),
            other => Err(format!("unknown policy `{other}` (expected strict or demo)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Policy {
    pub profile: Profile,
    #[serde(with = "hexfmt::list")]
    pub allowed_cofactors: Vec<u64>,
    #[serde(with = "hexfmt::opt")]
    pub min_r_bits: Option<u64>,
    #[serde(with = "hexfmt::list")]
    pub twist_allowed_cofactors: Vec<u64>,
    #[serde(with = "hexfmt::opt")]
    pub twist_min_r_bits: Option<u64>,
    #[serde(with = "hexfmt::one")]
    pub k_max: u64,
    #[serde(with = "hexfmt::one")]
    pub cm_disc_bound: u64,
    #[serde(with = "hexfmt::list")]
    pub exclude_traces: Vec<i64>,
    #[serde(with = "hexfmt::one")]
    pub max_trials: u64,
}

pub const DEFAULT_K_MAX: u64 = 20;
pub const DEFAULT_CM_DISC_BOUND: u64 = 100;
pub const DEFAULT_MAX_TRIALS: u64 = 10_000;

impl Policy {
    pub fn strict(modulus: &PrimeModulus) -> Self {
        let min_bits = modulus.bit_len().saturating_sub(3);
        Self {
            profile: Profile::Strict,
            allowed_cofactors: vec![1, 2, 4],
            min_r_bits: Some(min_bits),
            twist_allowed_cofactors: vec![1, 2, 4],
            twist_min_r_bits: Some(min_bits),
            k_max: DEFAULT_K_MAX,
            cm_disc_bound: DEFAULT_CM_DISC_BOUND,
            exclude_traces: vec![1, -1],
            max_trials: DEFAULT_MAX_TRIALS,
        }
    }

    pub fn demo() -> Self {
        Self {
            profile: Profile::Demo,
            allowed_cofactors: Vec::new(),
            min_r_bits: None,
            twist_allowed_cofactors: Vec::new(),
            twist_min_r_bits: None,
            k_max: DEFAULT_K_MAX,
            cm_disc_bound: DEFAULT_CM_DISC_BOUND,
            exclude_traces: vec![1, -1],
            max_trials: DEFAULT_MAX_TRIALS,
        }
    }

    pub fn from_profile(profile: Profile, modulus: &PrimeModulus) -> Self {
        match profile {
            Profile::Strict => Self::strict(modulus),
            Profile::Demo => Self::demo(),
        }
    }

    /// Demo below [`STRICT_FROM_BITS`], strict from there on.
    pub fn for_modulus(modulus: &PrimeModulus) -> Self {
        if modulus.bit_len() < STRICT_FROM_BITS {
            Self::demo()
        } else {
            Self::strict(modulus)
        }
    }

    pub fn check(&self) -> Result<(), String> {
        if self.k_max == 0 {
            return Err("k_max must be at least 1".into());
        }
        if self.max_trials == 0 {
            return Err("max_trials must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckResult {
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn pass(detail: impl Into<String>) -> Self {
        Self {
            passed: true,
            detail: detail.into(),
        }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Self {
            passed: false,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidationReport {
    pub order: CheckResult,
    pub twist: CheckResult,
    pub anomalous: CheckResult,
    pub cm: CheckResult,
    pub embedding: CheckResult,
    #[serde(with = "hexfmt::opt")]
    pub cm_fundamental_disc: Option<BigInt>,
    #[serde(with = "hexfmt::opt")]
    pub embedding_k_found: Option<u64>,
    pub passed: bool,
}

impl ValidationReport {
    pub fn checks(&self) -> [(&'static str, &CheckResult); 5] {
        [
            ("order", &self.order),
            ("twist", &self.twist),
            ("anomalous", &self.anomalous),
            ("cm", &self.cm),
            ("embedding", &self.embedding),
        ]
    }
}

fn prime_part_rule(
    label: &str,
    h: &BigUint,
    r: &BigUint,
    p: &BigUint,
    profile: Profile,
    allowed: &[u64],
    min_bits: Option<u64>,
) -> CheckResult {
    let summary = format!("{label}: h = {h}, r = {r}");
    if !is_prime(r) {
        return CheckResult::fail(format!("{summary}; r is not prime"));
    }
    if !allowed.is_empty() && !allowed.iter().any(|&c| BigUint::from(c) == *h) {
        return CheckResult::fail(format!("{summary}; cofactor not in {allowed:?}"));
    }
    if let Some(bits) = min_bits {
        if r.bits() < bits {
            return CheckResult::fail(format!("{summary}; r has {} bits, need {bits}", r.bits()));
        }
    }
    if profile == Profile::Demo && r * r <= *p {
        return CheckResult::fail(format!("{summary}; r <= sqrt(p)"));
    }
    CheckResult::pass(summary)
}

pub fn check_order(od: &OrderData, p: &BigUint, policy: &Policy) -> Result<CheckResult, ValidateError> {
    if !od.factors.cofactor_complete {
        return Err(ValidateError::IncompleteFactorization(od.n.clone()));
    }
    Ok(prime_part_rule(
        "#E",
        &od.h,
        &od.r,
        p,
        policy.profile,
        &policy.allowed_cofactors,
        policy.min_r_bits,
    ))
}

pub fn check_twist(od: &OrderData, p: &BigUint, policy: &Policy) -> Result<CheckResult, ValidateError> {
    if !od.twist_factors.cofactor_complete {
        return Err(ValidateError::IncompleteFactorization(od.n_twist.clone()));
    }
    Ok(prime_part_rule(
        "#E'",
        &od.h_twist,
        &od.r_twist,
        p,
        policy.profile,
        &policy.twist_allowed_cofactors,
        policy.twist_min_r_bits,
    ))
}

/// Fails iff the trace is one of the excluded values (default `±1`).
pub fn check_anomalous(trace: &BigInt, policy: &Policy) -> CheckResult {
    if policy.exclude_traces.iter().any(|&t| BigInt::from(t) == *trace) {
        CheckResult::fail(format!("trace {trace} is excluded"))
    } else {
        CheckResult::pass(format!("trace {trace}"))
    }
}

/// Fundamental discriminant `D0` of a negative discriminant `D = f^2 D0`,
/// given the factorization of `|D|`.
pub fn fundamental_discriminant(abs_d: &Factorization) -> BigInt {
    let m = abs_d.squarefree_part();
    let d = BigInt::from_biguint(Sign::Minus, m);
    if d.mod_floor(&BigInt::from(4)) == BigInt::one() {
        d
    } else {
        d * 4
    }
}

/// Fails iff `|D0| <= cm_disc_bound` for `t^2 - 4p = f^2 D0`. Returns `D0`
/// alongside the verdict.
pub fn check_cm(
    trace: &BigInt,
    p: &BigUint,
    policy: &Policy,
) -> Result<(CheckResult, BigInt), ValidateError> {
    let d: BigInt = trace * trace - BigInt::from(p.clone()) * 4;
    if !d.is_negative() {
        return Ok((CheckResult::fail(format!("t^2 - 4p = {d} is not negative")), d));
    }
    let abs_d = d.magnitude().clone();
    let f = match factorize(&abs_d) {
        Ok(f) => f,
        Err(FactorError::WorkBoundExceeded(_)) | Err(FactorError::Zero) => {
            return Err(ValidateError::IncompleteFactorization(abs_d))
        }
    };
    let d0 = fundamental_discriminant(&f);
    let bound = BigUint::from(policy.cm_disc_bound);
    let result = if policy.cm_disc_bound > 0 && *d0.magnitude() <= bound {
        CheckResult::fail(format!("D = {d}, D0 = {d0}, |D0| <= {bound}"))
    } else {
        CheckResult::pass(format!("D = {d}, D0 = {d0}, bound {bound}"))
    };
    Ok((result, d0))
}

/// Fails with the least `k <= k_max` such that `p^k ≡ 1 (mod r)`.
pub fn check_embedding(r: &BigUint, p: &BigUint, policy: &Policy) -> (CheckResult, Option<u64>) {
    if r.is_zero() || r.is_one() {
        return (CheckResult::fail(format!("r = {r} has no embedding degree")), None);
    }
    let base = p % r;
    let mut acc = BigUint::one();
    for k in 1..=policy.k_max {
        acc = (&acc * &base) % r;
        if acc.is_one() {
            return (
                CheckResult::fail(format!("p^{k} = 1 mod r for r = {r}")),
                Some(k),
            );
        }
    }
    (
        CheckResult::pass(format!("no k <= {} with p^k = 1 mod {r}", policy.k_max)),
        None,
    )
}

fn inconclusive(e: ValidateError) -> CheckResult {
    CheckResult::fail(format!("inconclusive: {e}"))
}

/// Run every filter and aggregate; never stops at the first failure.
pub fn validate_all(curve: &CurveParams, od: &OrderData, policy: &Policy) -> ValidationReport {
    let p = curve.modulus().p();
    let order = check_order(od, p, policy).unwrap_or_else(inconclusive);
    let twist = check_twist(od, p, policy).unwrap_or_else(inconclusive);
    let anomalous = check_anomalous(&od.trace, policy);
    let (cm, cm_fundamental_disc) = match check_cm(&od.trace, p, policy) {
        Ok((c, d0)) => (c, Some(d0)),
        Err(e) if policy.cm_disc_bound == 0 => (CheckResult::pass(format!("disabled; {e}")), None),
        Err(e) => (inconclusive(e), None),
    };
    let (embedding, embedding_k_found) = check_embedding(&od.r, p, policy);
    let passed = order.passed && twist.passed && anomalous.passed && cm.passed && embedding.passed;
    ValidationReport {
        order,
        twist,
        anomalous,
        cm,
        embedding,
        cm_fundamental_disc,
        embedding_k_found,
        passed,
    }
}

/// Multiplicative order of `p` modulo `r` when it is at most `limit`.
pub fn small_order(p: u64, r: u64, limit: u64) -> Option<u64> {
    let base = p % r;
    let mut acc = 1u64;
    for k in 1..=limit {
        acc = (acc as u128 * base as u128 % r as u128) as u64;
        if acc == 1 {
            return Some(k);
        }
    }
    None
}
