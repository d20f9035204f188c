//! Exact rational arithmetic helpers.
//!
//! Costs, dual values and bounds are all exact rationals. On the wire they are
//! strings of the form `"p/q"` (or `"p"` for integers) so fixtures never drift
//! through floating point.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::str::FromStr;

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"2.5"`.
pub fn parse(text: &str) -> Result<Rational, String> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|e| format!("bad numerator in {t:?}: {e}"))?;
        let q = BigInt::from_str(q.trim()).map_err(|e| format!("bad denominator in {t:?}: {e}"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in {t:?}"));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let digits = format!("{whole}{frac}");
        let p = BigInt::from_str(&digits).map_err(|e| format!("bad decimal {t:?}: {e}"))?;
        let q = num::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(p, q));
    }
    BigInt::from_str(t)
        .map(Rational::from_integer)
        .map_err(|e| format!("bad rational {t:?}: {e}"))
}

pub fn format(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `H(n) = 1 + 1/2 + ... + 1/n`, with `H(0) = 0`.
pub fn harmonic(n: usize) -> Rational {
    (1..=n).fold(Rational::zero(), |acc, i| acc + ratio(1, i as i64))
}

/// `floor(log2(x))` for `x >= 1`, and 0 for `x = 0`.
pub fn floor_log2(x: usize) -> usize {
    if x == 0 {
        0
    } else {
        (usize::BITS - 1 - x.leading_zeros()) as usize
    }
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

pub fn sum<'a, I: IntoIterator<Item = &'a Rational>>(items: I) -> Rational {
    items.into_iter().fold(Rational::zero(), |acc, x| acc + x)
}

pub fn one() -> Rational {
    Rational::one()
}

/// Serde adapter for a single rational stored as a string.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) => super::parse(&t).map_err(serde::de::Error::custom),
            Raw::Int(i) => Ok(super::int(i)),
        }
    }
}

/// Serde adapter for `Option<Rational>`.
pub mod serde_opt {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&super::format(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| super::parse(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}
