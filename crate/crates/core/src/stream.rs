//! Counter-mode hashing of `(p, DS, σ)` into labeled streams of field
//! elements.
//!
//! Byte layouts (normative):
//!
//! * stream element `i` of label `L`: `SHA-256(L ‖ DS ‖ σ ‖ be64(i)) mod p`
//! * mix of `(x, y)` under label `L`: `SHA-256(L ‖ DS ‖ σ ‖ enc(x) ‖ enc(y)) mod p`
//!
//! where `be64` is the 8-byte big-endian counter and `enc` is the
//! fixed-width big-endian residue using [`PrimeModulus::byte_width`] bytes.
//! Digests are read big-endian before reduction.

use std::fmt;

use num_bigint::BigUint;
use sha2::{Digest, Sha256};

use crate::arith::{Fe, PrimeModulus};
use crate::error::ContextError;

/// The public input triple `(p, DS, σ)`.
#[derive(Clone, PartialEq, Eq)]
pub struct SeedContext {
    modulus: PrimeModulus,
    ds: String,
    sigma: [u8; 32],
}

impl SeedContext {
    pub fn new(
        modulus: PrimeModulus,
        ds: impl Into<String>,
        sigma: [u8; 32],
    ) -> Result<Self, ContextError> {
        let ds = ds.into();
        if ds.is_empty() {
            return Err(ContextError::EmptyDomainSeparator);
        }
        Ok(Self { modulus, ds, sigma })
    }

    pub fn modulus(&self) -> &PrimeModulus {
        &self.modulus
    }

    pub fn ds(&self) -> &str {
        &self.ds
    }

    pub fn sigma(&self) -> &[u8; 32] {
        &self.sigma
    }

    fn digest_mod_p(&self, label: &[u8], tail: &[&[u8]]) -> Fe {
        let mut h = Sha256::new();
        h.update(label);
        h.update(self.ds.as_bytes());
        h.update(self.sigma);
        for part in tail {
            h.update(part);
        }
        self.modulus.reduce(&BigUint::from_bytes_be(&h.finalize()))
    }

    /// Element `i` of the stream labeled `label`.
    pub fn derive(&self, label: &[u8], i: u64) -> Fe {
        self.digest_mod_p(label, &[&i.to_be_bytes()])
    }

    /// Hash-mix of two field elements under `label`.
    pub fn mix(&self, label: &[u8], x: &Fe, y: &Fe) -> Fe {
        self.digest_mod_p(label, &[&x.to_bytes_fixed(), &y.to_bytes_fixed()])
    }

    /// Hash of an arbitrary list of field elements under `label`.
    pub fn mix_many(&self, label: &[u8], xs: &[Fe]) -> Fe {
        let enc: Vec<Vec<u8>> = xs.iter().map(Fe::to_bytes_fixed).collect();
        let parts: Vec<&[u8]> = enc.iter().map(Vec::as_slice).collect();
        self.digest_mod_p(label, &parts)
    }

    /// Reconciliation mix, `c̃ = H(label ‖ DS ‖ σ ‖ x ‖ y) mod p`.
    pub fn rec_mix(&self, label: MixLabel, x: &Fe, y: &Fe) -> Fe {
        self.mix(label.as_bytes(), x, y)
    }

    pub fn stream(&self, label: StreamLabel) -> LabeledStream {
        LabeledStream::at(self.clone(), label, 0)
    }
}

impl fmt::Debug for SeedContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeedContext")
            .field("p", self.modulus.p())
            .field("ds", &self.ds)
            .field("sigma", &hex::encode(self.sigma))
            .finish()
    }
}

/// Parse a 64-character hex seed.
pub fn parse_seed(s: &str) -> Result<[u8; 32], ContextError> {
    let s = s.strip_prefix("0x").unwrap_or(s);
    let bytes = hex::decode(s).map_err(|e| ContextError::SeedHex(e.to_string()))?;
    bytes
        .as_slice()
        .try_into()
        .map_err(|_| ContextError::SeedLength(bytes.len()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StreamLabel {
    /// Search abscissae for the solubility proxies and random points.
    U,
    /// Binary quartic coefficients.
    F2,
    /// Ternary cubic coefficients.
    F3,
}

impl StreamLabel {
    pub const ALL: [StreamLabel; 3] = [StreamLabel::F2, StreamLabel::F3, StreamLabel::U];

    pub fn as_bytes(self) -> &'static [u8] {
        self.as_str().as_bytes()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StreamLabel::U => "U",
            StreamLabel::F2 => "F2",
            StreamLabel::F3 => "F3",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MixLabel {
    C4,
    C6,
}

impl MixLabel {
    pub fn as_bytes(self) -> &'static [u8] {
        match self {
            MixLabel::C4 => b"REC_c4",
            MixLabel::C6 => b"REC_c6",
        }
    }
}

/// A source of field elements consumed one at a time.
///
/// [`LabeledStream`] is the production implementation; tests substitute
/// fixed sequences.
pub trait FieldStream {
    fn next_element(&mut self) -> Fe;
    fn cursor(&self) -> u64;
    fn modulus(&self) -> &PrimeModulus;
}

/// A cursor into one labeled stream. Cursors only move forward.
#[derive(Clone, Debug)]
pub struct LabeledStream {
    context: SeedContext,
    label: StreamLabel,
    cursor: u64,
}

impl LabeledStream {
    /// Resume a stream at `cursor`, e.g. to replay a recorded range.
    pub fn at(context: SeedContext, label: StreamLabel, cursor: u64) -> Self {
        Self {
            context,
            label,
            cursor,
        }
    }

    pub fn label(&self) -> StreamLabel {
        self.label
    }
}

impl FieldStream for LabeledStream {
    fn next_element(&mut self) -> Fe {
        let v = self.context.derive(self.label.as_bytes(), self.cursor);
        self.cursor += 1;
        v
    }

    fn cursor(&self) -> u64 {
        self.cursor
    }

    fn modulus(&self) -> &PrimeModulus {
        self.context.modulus()
    }
}

/// A cycling fixed sequence of elements, for driving the sampling stages
/// with hand-built inputs.
#[derive(Clone, Debug)]
pub struct FixedStream {
    values: Vec<Fe>,
    cursor: u64,
    modulus: PrimeModulus,
}

impl FixedStream {
    pub fn new(modulus: &PrimeModulus, values: Vec<u64>) -> Self {
        assert!(!values.is_empty(), "fixed stream needs at least one value");
        Self {
            values: values.into_iter().map(|v| modulus.elem(v)).collect(),
            cursor: 0,
            modulus: modulus.clone(),
        }
    }
}

impl FieldStream for FixedStream {
    fn next_element(&mut self) -> Fe {
        let v = self.values[(self.cursor % self.values.len() as u64) as usize].clone();
        self.cursor += 1;
        v
    }

    fn cursor(&self) -> u64 {
        self.cursor
    }

    fn modulus(&self) -> &PrimeModulus {
        &self.modulus
    }
}
