//! Exact rationals as "p/q" strings in serialized documents.

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serializer};

use crate::algebra::fmt_rational;
use crate::special::parse_decimal_rational;

pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
    let s = String::deserialize(d)?;
    parse_decimal_rational(&s).map_err(serde::de::Error::custom)
}
