//! Exact rationals.
//!
//! Entries are [`BigRational`]s, which are kept in lowest terms with a
//! positive denominator. This module adds the strict textual form used by
//! the matrix files (`p`, `-p` or `p/q` with `q > 0`) and serde helpers that
//! write rationals as strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders in lowest terms; integers carry no `/1`.
pub fn render(r: &Rational) -> String {
    r.to_string()
}

/// Parses a rational token. `column` is only used for error reporting.
pub fn parse_token(token: &str, line: usize, column: usize) -> Result<Rational> {
    let err = |message: String| Error::Parse { line, column, message };
    let (neg, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    let (num, den) = match body.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (body, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) {
        return Err(err(format!("invalid rational `{token}`")));
    }
    let mut numer: BigInt = num.parse().expect("validated digits");
    if neg {
        numer = -numer;
    }
    let denom = match den {
        None => BigInt::one(),
        Some(q) => {
            if !digits(q) {
                return Err(err(format!("invalid denominator in `{token}`")));
            }
            let q: BigInt = q.parse().expect("validated digits");
            if q.is_zero() {
                return Err(err(format!("zero denominator in `{token}`")));
            }
            q
        }
    };
    Ok(Rational::new(numer, denom))
}

pub fn parse(token: &str) -> Result<Rational> {
    parse_token(token.trim(), 1, 1)
}

pub mod serde_str {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&render(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(de::Error::custom)
    }
}

pub mod serde_vec {
    use super::*;
    use serde::{de, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&render(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse(s).map_err(de::Error::custom))
            .collect()
    }
}
