//! JSON encoding helpers shared by the subcommands.
//!
//! Machine output goes to stdout as a single JSON value with sorted keys,
//! so every emitted document re-parses to an equal value. Values that may
//! be undetermined encode as the value itself when known and as
//! {"unknown": reason} otherwise.

use num::bigint::BigInt;
use num::rational::BigRational;
use serde_json::{json, Value};

use plumb::{Tri, TriBool};

/// Encodes a big integer as a JSON number when it fits, else as a string.
pub fn bigint(v: &BigInt) -> Value {
    match i64::try_from(v.clone()) {
        Ok(n) => json!(n),
        Err(_) => json!(v.to_string()),
    }
}

/// Encodes an exact rational: integers as numbers, the rest as "p/q".
pub fn rational(v: &BigRational) -> Value {
    if v.is_integer() {
        bigint(&v.to_integer())
    } else {
        json!(v.to_string())
    }
}

pub fn tri_u64(t: &Tri<u64>) -> Value {
    match t {
        Tri::Known(v) => json!(v),
        Tri::Unknown(reason) => json!({ "unknown": reason }),
    }
}

pub fn tri_bigint(t: &Tri<BigInt>) -> Value {
    match t {
        Tri::Known(v) => bigint(v),
        Tri::Unknown(reason) => json!({ "unknown": reason }),
    }
}

pub fn tri_bool(t: &TriBool) -> Value {
    match t {
        Tri::Known(v) => json!(v),
        Tri::Unknown(reason) => json!({ "unknown": reason }),
    }
}

/// Re-parses canonical JSON text produced by the library into a value.
pub fn reparse(text: &str) -> Value {
    serde_json::from_str(text).expect("library emits valid JSON")
}

/// One aligned "name: value" block on stderr.
pub fn table(rows: &[(&str, String)]) {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        eprintln!("  {k:width$}  {v}");
    }
}
