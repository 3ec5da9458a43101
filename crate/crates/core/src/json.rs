//! Shared JSON plumbing.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// Version tag written into every versioned document.
pub const SCHEMA_VERSION: u32 = 1;

/// Integer as a JSON number when it fits in `i64`, otherwise a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntRepr {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for IntRepr {
    fn from(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(x) => IntRepr::Small(x),
            None => IntRepr::Big(v.to_string()),
        }
    }
}

impl From<BigInt> for IntRepr {
    fn from(v: BigInt) -> Self {
        IntRepr::from(&v)
    }
}

impl TryFrom<IntRepr> for BigInt {
    type Error = String;
    fn try_from(r: IntRepr) -> Result<Self, String> {
        match r {
            IntRepr::Small(x) => Ok(BigInt::from(x)),
            IntRepr::Big(s) => s.trim().parse().map_err(|_| format!("not an integer: {s:?}")),
        }
    }
}

impl fmt::Display for IntRepr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntRepr::Small(x) => write!(f, "{x}"),
            IntRepr::Big(s) => write!(f, "{s}"),
        }
    }
}

pub fn ints_to_json(v: &[BigInt]) -> Vec<IntRepr> {
    v.iter().map(IntRepr::from).collect()
}

pub fn ints_from_json(v: Vec<IntRepr>) -> Result<Vec<BigInt>, String> {
    v.into_iter().map(BigInt::try_from).collect()
}

/// Serde adapter for `Vec<BigInt>` fields.
pub mod int_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        ints_to_json(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<IntRepr>::deserialize(d)?;
        ints_from_json(raw).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Vec<BigInt>>` fields.
pub mod int_vec_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<IntRepr>> = v.iter().map(|r| ints_to_json(r)).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let raw = Vec::<Vec<IntRepr>>::deserialize(d)?;
        raw.into_iter()
            .map(ints_from_json)
            .collect::<Result<_, _>>()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_values_become_strings() {
        let big: BigInt = BigInt::from(i64::MAX) * 4;
        let s = serde_json::to_string(&IntRepr::from(&big)).unwrap();
        assert!(s.starts_with('"'));
        let back: IntRepr = serde_json::from_str(&s).unwrap();
        assert_eq!(BigInt::try_from(back).unwrap(), big);
        assert_eq!(serde_json::to_string(&IntRepr::from(&BigInt::from(-3))).unwrap(), "-3");
    }
}
