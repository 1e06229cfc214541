//! Serde adapters that write big integers as decimal strings, so JSON
//! consumers never see a number wider than they can parse.

use num_bigint::BigInt;
use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(D::Error::custom)
    }
}

pub mod bigint_grid {
    use super::*;
    use serde::Serialize;

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = v
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        rows.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| x.parse().map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}
