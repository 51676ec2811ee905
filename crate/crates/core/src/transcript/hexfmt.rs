//! Canonical hex encoding for transcript integers: lowercase, no prefix, no
//! leading zeros, `0` for zero, and a `-` sign for negative values.

use num_bigint::{BigInt, BigUint, Sign};
use serde::{Deserialize, Deserializer, Serializer};

pub trait HexCodec: Sized {
    fn encode_hex(&self) -> String;
    fn decode_hex(s: &str) -> Result<Self, String>;
}

fn check_digits(s: &str) -> Result<(), String> {
    if s.is_empty() {
        return Err("empty hex string".into());
    }
    if !s.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b)) {
        return Err(format!("`{s}` is not lowercase hex"));
    }
    if s.len() > 1 && s.starts_with('0') {
        return Err(format!("`{s}` has a leading zero"));
    }
    Ok(())
}

impl HexCodec for BigUint {
    fn encode_hex(&self) -> String {
        self.to_str_radix(16)
    }

    fn decode_hex(s: &str) -> Result<Self, String> {
        check_digits(s)?;
        BigUint::parse_bytes(s.as_bytes(), 16).ok_or_else(|| format!("`{s}` is not hex"))
    }
}

impl HexCodec for BigInt {
    fn encode_hex(&self) -> String {
        self.to_str_radix(16)
    }

    fn decode_hex(s: &str) -> Result<Self, String> {
        match s.strip_prefix('-') {
            Some("0") => Err("negative zero".into()),
            Some(mag) => Ok(BigInt::from_biguint(Sign::Minus, BigUint::decode_hex(mag)?)),
            None => Ok(BigInt::from(BigUint::decode_hex(s)?)),
        }
    }
}

impl HexCodec for u64 {
    fn encode_hex(&self) -> String {
        format!("{self:x}")
    }

    fn decode_hex(s: &str) -> Result<Self, String> {
        check_digits(s)?;
        u64::from_str_radix(s, 16).map_err(|e| format!("`{s}`: {e}"))
    }
}

impl HexCodec for u32 {
    fn encode_hex(&self) -> String {
        format!("{self:x}")
    }

    fn decode_hex(s: &str) -> Result<Self, String> {
        check_digits(s)?;
        u32::from_str_radix(s, 16).map_err(|e| format!("`{s}`: {e}"))
    }
}

impl HexCodec for i64 {
    fn encode_hex(&self) -> String {
        if *self < 0 {
            format!("-{:x}", self.unsigned_abs())
        } else {
            format!("{self:x}")
        }
    }

    fn decode_hex(s: &str) -> Result<Self, String> {
        let v = BigInt::decode_hex(s)?;
        i64::try_from(v).map_err(|_| format!("`{s}` does not fit in 64 bits"))
    }
}

pub mod one {
    use super::*;

    pub fn serialize<T: HexCodec, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.encode_hex())
    }

    pub fn deserialize<'de, T: HexCodec, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        let s = String::deserialize(d)?;
        T::decode_hex(&s).map_err(serde::de::Error::custom)
    }
}

pub mod opt {
    use super::*;

    pub fn serialize<T: HexCodec, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.encode_hex()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, T: HexCodec, D: Deserializer<'de>>(d: D) -> Result<Option<T>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| T::decode_hex(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

pub mod list {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<T: HexCodec, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.encode_hex())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, T: HexCodec, D: Deserializer<'de>>(d: D) -> Result<Vec<T>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| T::decode_hex(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Prime-power factor lists as `[[prime, exponent], ...]`.
pub mod factors {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[(BigUint, u32)], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for (q, e) in v {
            seq.serialize_element(&[q.encode_hex(), e.encode_hex()])?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(BigUint, u32)>, D::Error> {
        Vec::<[String; 2]>::deserialize(d)?
            .iter()
            .map(|[q, e]| {
                Ok((
                    BigUint::decode_hex(q).map_err(serde::de::Error::custom)?,
                    u32::decode_hex(e).map_err(serde::de::Error::custom)?,
                ))
            })
            .collect()
    }
}

/// The 32-byte seed as exactly 64 lowercase hex digits.
pub mod sigma {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[u8; 32], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&::hex::encode(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[u8; 32], D::Error> {
        let s = String::deserialize(d)?;
        if s.len() != 64 || s.bytes().any(|b| b.is_ascii_uppercase()) {
            return Err(serde::de::Error::custom("sigma must be 64 lowercase hex digits"));
        }
        let mut out = [0u8; 32];
        ::hex::decode_to_slice(&s, &mut out).map_err(serde::de::Error::custom)?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(BigUint::from(0u32).encode_hex(), "0");
        assert_eq!(BigUint::from(100003u32).encode_hex(), "186a3");
        assert_eq!(BigInt::from(-293).encode_hex(), "-125");
        assert_eq!((-1i64).encode_hex(), "-1");
        assert_eq!(i64::decode_hex("-125").unwrap(), -293);
    }

    #[test]
    fn rejects_non_canonical() {
        for bad in ["", "00", "0a", "A", "0x1", "-0", "+1", " 1", "g"] {
            assert!(BigInt::decode_hex(bad).is_err(), "{bad}");
        }
        assert!(u64::decode_hex("10000000000000000").is_err());
    }
}
