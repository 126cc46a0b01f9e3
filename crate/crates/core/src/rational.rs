//! Exact rationals and their `"a/b"` string form.

use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serializer};

pub type Rational = Rational64;

/// `"a/b"`, always with a denominator, in lowest terms.
pub fn format(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Reads `"a/b"` or a bare integer.
pub fn parse(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Rational::new(n, d))
        }
        None => s.trim().parse().ok().map(Rational::from_integer),
    }
}

/// Serde adapter: `#[serde(with = "crate::rational::string")]`.
pub mod string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`")))
    }
}
