//! Single-field transcript mutations.

use proptest::sample::Index;
use serde_json::Value;

/// Every leaf of `v` as a JSON pointer.
pub fn leaves(v: &Value, path: String, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| leaves(x, format!("{path}/{k}"), out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| leaves(x, format!("{path}/{i}"), out)),
        _ => out.push(path),
    }
}

pub fn all_leaves(v: &Value) -> Vec<String> {
    let mut paths = Vec::new();
    leaves(v, String::new(), &mut paths);
    paths
}

/// Leaves that replay re-derives; everything else is covered by the digest.
pub fn derived_leaves(v: &Value) -> Vec<String> {
    let mut paths = Vec::new();
    for key in [
        "inputs", "trial_index", "retries", "rejections", "streams", "quartic", "cubic",
        "reconciliation", "order", "validation",
    ] {
        leaves(&v[key], format!("/{key}"), &mut paths);
    }
    paths
}

fn is_hex(s: &str) -> bool {
    let s = s.strip_prefix('-').unwrap_or(s);
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
}

/// Change one leaf while keeping it well-formed where possible.
pub fn mutate(leaf: &mut Value, pos: &Index, digit: u8) {
    match leaf {
        Value::Bool(b) => *b = !*b,
        Value::Number(n) => *leaf = Value::from(n.as_u64().unwrap_or(0) + 1),
        Value::String(s) if is_hex(s) => {
            let digits = b"0123456789abcdef";
            let mut bytes = s.clone().into_bytes();
            let first = usize::from(bytes[0] == b'-');
            let i = first + pos.index(bytes.len() - first);
            let leading = i == first && bytes.len() > first + 1;
            let mut d = digit % 16;
            while digits[d as usize] == bytes[i] || (leading && d == 0) {
                d = (d + 1) % 16;
            }
            bytes[i] = digits[d as usize];
            *s = String::from_utf8(bytes).unwrap();
        }
        Value::String(s) => s.push('x'),
        Value::Null => *leaf = Value::from(0u64),
        _ => unreachable!("leaves only"),
    }
}
