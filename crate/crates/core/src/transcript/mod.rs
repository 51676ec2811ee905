//! The generation record: canonical JSON encoding, strict parsing and
//! verification by re-derivation.
//!
//! Canonical form: keys sorted, no whitespace, every integer a lowercase hex
//! string without leading zeros (`"0"` for zero, `-` prefix when negative),
//! `sigma` exactly 64 hex digits. `content_digest` is SHA-256 over the
//! canonical bytes of the transcript with that key removed.

pub mod hexfmt;
mod verify;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::config::CubicInvariantMode;
use crate::validate::{Policy, ValidationReport};

pub use verify::{verify, Stage, StageCheck, VerifyOptions, VerifyReport};

pub const SCHEMA_VERSION: &str = "selmergen/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Transcript {
    pub schema_version: String,
    pub inputs: Inputs,
    pub config: ConfigRecord,
    pub policy: Policy,
    #[serde(with = "hexfmt::one")]
    pub trial_index: u64,
    pub retries: Retries,
    pub rejections: Rejections,
    pub streams: StreamCursors,
    pub quartic: QuarticRecord,
    pub cubic: CubicRecord,
    pub reconciliation: ReconciliationRecord,
    pub order: OrderRecord,
    pub validation: ValidationReport,
    pub warnings: Vec<String>,
    pub content_digest: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Inputs {
    #[serde(with = "hexfmt::one")]
    pub p: BigUint,
    pub ds: String,
    #[serde(with = "hexfmt::sigma")]
    pub sigma: [u8; 32],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigRecord {
    #[serde(with = "hexfmt::list")]
    pub ell_set: Vec<u64>,
    #[serde(with = "hexfmt::one")]
    pub quartic_search_bound: u64,
    #[serde(with = "hexfmt::one")]
    pub cubic_search_bound: u64,
    #[serde(with = "hexfmt::one")]
    pub stage_budget: u64,
    #[serde(with = "hexfmt::one")]
    pub order_check_points: u64,
    pub cubic_invariants: CubicInvariantMode,
    pub monomial_order: String,
    /// `builtin` or the external counter's command line.
    pub counter: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Retries {
    #[serde(with = "hexfmt::one")]
    pub reconcile_singular: u64,
    #[serde(with = "hexfmt::one")]
    pub validation_failed: u64,
}

impl Retries {
    pub fn total(&self) -> u64 {
        self.reconcile_singular + self.validation_failed
    }
}

/// Cumulative over all trials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rejections {
    #[serde(with = "hexfmt::one")]
    pub quartic_zero_or_square: u64,
    #[serde(with = "hexfmt::one")]
    pub quartic_singular: u64,
    #[serde(with = "hexfmt::one")]
    pub quartic_insoluble: u64,
    #[serde(with = "hexfmt::one")]
    pub cubic_singular: u64,
    #[serde(with = "hexfmt::one")]
    pub cubic_insoluble: u64,
}

impl Rejections {
    pub fn quartic_total(&self) -> u64 {
        self.quartic_zero_or_square + self.quartic_singular + self.quartic_insoluble
    }

    pub fn cubic_total(&self) -> u64 {
        self.cubic_singular + self.cubic_insoluble
    }
}

/// Cursor of a stream when the accepted trial began and when generation
/// finished.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CursorRange {
    #[serde(with = "hexfmt::one")]
    pub start: u64,
    #[serde(with = "hexfmt::one")]
    pub end: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StreamCursors {
    pub f2: CursorRange,
    pub f3: CursorRange,
    pub u: CursorRange,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuarticRecord {
    /// `a, b, c, d, e` of `a x^4 + b x^3 z + c x^2 z^2 + d x z^3 + e z^4`.
    #[serde(with = "hexfmt::list")]
    pub coeffs: Vec<BigUint>,
    #[serde(with = "hexfmt::one")]
    pub i: BigUint,
    #[serde(with = "hexfmt::one")]
    pub j: BigUint,
    #[serde(with = "hexfmt::one")]
    pub c4: BigUint,
    #[serde(with = "hexfmt::one")]
    pub c6: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubicRecord {
    /// Coefficients in the order named by `config.monomial_order`.
    #[serde(with = "hexfmt::list")]
    pub coeffs: Vec<BigUint>,
    #[serde(with = "hexfmt::one")]
    pub s: BigUint,
    #[serde(with = "hexfmt::one")]
    pub t: BigUint,
    #[serde(with = "hexfmt::one")]
    pub c4: BigUint,
    #[serde(with = "hexfmt::one")]
    pub c6: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReconciliationRecord {
    #[serde(with = "hexfmt::one")]
    pub c4_mix: BigUint,
    #[serde(with = "hexfmt::one")]
    pub c6_mix: BigUint,
    #[serde(with = "hexfmt::one")]
    pub c4: BigUint,
    #[serde(with = "hexfmt::one")]
    pub c6: BigUint,
    #[serde(with = "hexfmt::one")]
    pub delta: BigUint,
    #[serde(with = "hexfmt::one")]
    pub a: BigUint,
    #[serde(with = "hexfmt::one")]
    pub b: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderRecord {
    #[serde(with = "hexfmt::one")]
    pub n: BigUint,
    #[serde(with = "hexfmt::one")]
    pub trace: BigInt,
    #[serde(with = "hexfmt::one")]
    pub n_twist: BigUint,
    #[serde(with = "hexfmt::factors")]
    pub factors: Vec<(BigUint, u32)>,
    #[serde(with = "hexfmt::factors")]
    pub twist_factors: Vec<(BigUint, u32)>,
    #[serde(with = "hexfmt::one")]
    pub r: BigUint,
    #[serde(with = "hexfmt::one")]
    pub h: BigUint,
    #[serde(with = "hexfmt::one")]
    pub r_twist: BigUint,
    #[serde(with = "hexfmt::one")]
    pub h_twist: BigUint,
    #[serde(with = "hexfmt::one")]
    pub twist_nonresidue: BigUint,
}

impl OrderRecord {
    pub fn from_order_data(od: &crate::curve::OrderData) -> Self {
        Self {
            n: od.n.clone(),
            trace: od.trace.clone(),
            n_twist: od.n_twist.clone(),
            factors: od.factors.factors.clone(),
            twist_factors: od.twist_factors.factors.clone(),
            r: od.r.clone(),
            h: od.h.clone(),
            r_twist: od.r_twist.clone(),
            h_twist: od.h_twist.clone(),
            twist_nonresidue: od.twist_nonresidue.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub reason: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "byte {}: {}", self.offset, self.reason)
    }
}

impl std::error::Error for ParseError {}

/// Sorted-key, whitespace-free JSON for any serializable value.
pub fn canonical_json<T: Serialize>(v: &T) -> Vec<u8> {
    let value = serde_json::to_value(v).expect("transcript types serialize");
    serde_json::to_vec(&value).expect("values serialize")
}

fn digest_of(value: &Value) -> String {
    let mut v = value.clone();
    if let Value::Object(map) = &mut v {
        map.remove("content_digest");
    }
    let bytes = serde_json::to_vec(&v).expect("values serialize");
    ::hex::encode(Sha256::digest(&bytes))
}

impl Transcript {
    /// Digest over every field except `content_digest` itself.
    pub fn compute_digest(&self) -> String {
        digest_of(&serde_json::to_value(self).expect("transcript serializes"))
    }

    /// Recompute and store `content_digest`.
    pub fn seal(&mut self) {
        self.content_digest = self.compute_digest();
    }

    pub fn digest_matches(&self) -> bool {
        self.content_digest == self.compute_digest()
    }
}

pub fn serialize(tr: &Transcript) -> Vec<u8> {
    canonical_json(tr)
}

fn offset_of(data: &[u8], line: usize, column: usize) -> usize {
    if line == 0 {
        return data.len();
    }
    let mut start = 0;
    for _ in 1..line {
        match data[start..].iter().position(|&b| b == b'\n') {
            Some(i) => start += i + 1,
            None => return data.len(),
        }
    }
    (start + column.saturating_sub(1)).min(data.len())
}

/// Strict parse: unknown or duplicate keys, non-canonical integers, wrong
/// `sigma` length, whitespace or unsorted keys are all rejected.
pub fn parse(data: &[u8]) -> Result<Transcript, ParseError> {
    let tr: Transcript = serde_json::from_slice(data).map_err(|e| ParseError {
        offset: offset_of(data, e.line(), e.column()),
        reason: e.to_string(),
    })?;
    if tr.schema_version != SCHEMA_VERSION {
        return Err(ParseError {
            offset: 0,
            reason: format!(
                "unsupported schema_version `{}`, expected `{SCHEMA_VERSION}`",
                tr.schema_version
            ),
        });
    }
    let canonical = serialize(&tr);
    if canonical != data {
        let offset = canonical
            .iter()
            .zip(data)
            .position(|(a, b)| a != b)
            .unwrap_or(canonical.len().min(data.len()));
        return Err(ParseError {
            offset,
            reason: "input is not in canonical form".into(),
        });
    }
    Ok(tr)
}
