//! Exact counts and their decimal-string serde representation.

use num_bigint::BigUint;

/// Exact nonnegative integer used for labels, positions and family parameters.
pub type ExtendedCount = BigUint;

pub fn count(n: u64) -> ExtendedCount {
    BigUint::from(n)
}

pub(crate) fn to_usize(n: &ExtendedCount) -> Option<usize> {
    usize::try_from(n).ok()
}

/// `#[serde(with = "crate::count::decimal")]` for a single count.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(n)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}
