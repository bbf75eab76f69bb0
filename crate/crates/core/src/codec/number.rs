use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::primes::nth_prime;
use super::CodecError;

/// A natural number >= 1, either materialized or kept as prime-power pairs.
///
/// In factored form the pairs are `(prime_index, exponent)` with indices
/// 1..n in order; exponents are themselves Gödel numbers, which is what lets
/// a derivation code exist without ever being multiplied out.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GoedelNumber {
    Exact(BigUint),
    Factored(Vec<(usize, GoedelNumber)>),
}

impl GoedelNumber {
    pub fn exact(n: impl Into<BigUint>) -> Self {
        GoedelNumber::Exact(n.into())
    }

    pub fn as_exact(&self) -> Option<&BigUint> {
        match self {
            GoedelNumber::Exact(n) => Some(n),
            GoedelNumber::Factored(_) => None,
        }
    }

    pub fn is_factored(&self) -> bool {
        matches!(self, GoedelNumber::Factored(_))
    }

    pub fn is_even(&self) -> bool {
        match self {
            GoedelNumber::Exact(n) => n.is_even(),
            GoedelNumber::Factored(pairs) => pairs.iter().any(|(i, _)| *i == 1),
        }
    }

    /// log2 of the value; infinite when an exponent is itself astronomically large.
    pub fn log2(&self) -> f64 {
        match self {
            GoedelNumber::Exact(n) => big_log2(n),
            GoedelNumber::Factored(pairs) => pairs
                .iter()
                .map(|(i, e)| {
                    let exp_log2 = e.log2();
                    if exp_log2 > 1000.0 {
                        f64::INFINITY
                    } else {
                        exp_log2.exp2() * (nth_prime(*i) as f64).log2()
                    }
                })
                .sum(),
        }
    }

    /// Materializes the value if it needs at most `max_bits` bits.
    pub fn to_exact(&self, max_bits: u64) -> Result<BigUint, CodecError> {
        match self {
            GoedelNumber::Exact(n) => Ok(n.clone()),
            GoedelNumber::Factored(pairs) => {
                if self.log2() > max_bits as f64 {
                    return Err(CodecError::NotRepresentable { max_bits });
                }
                let mut acc = BigUint::one();
                for (i, e) in pairs {
                    let e = e.to_exact(max_bits)?;
                    let e = e.to_u32().ok_or(CodecError::NotRepresentable { max_bits })?;
                    acc *= BigUint::from(nth_prime(*i)).pow(e);
                }
                Ok(acc)
            }
        }
    }

    /// Converts an exact value to pairs by trial division; factored values
    /// are returned unchanged.
    pub fn to_factored(&self, ceiling: usize) -> Result<GoedelNumber, CodecError> {
        match self {
            GoedelNumber::Factored(_) => Ok(self.clone()),
            GoedelNumber::Exact(n) if n.is_one() => Ok(GoedelNumber::Factored(Vec::new())),
            GoedelNumber::Exact(n) => {
                let pairs = super::factor_with_ceiling(n, ceiling)?;
                Ok(GoedelNumber::Factored(
                    pairs
                        .into_iter()
                        .map(|(i, e)| (i, GoedelNumber::exact(e)))
                        .collect(),
                ))
            }
        }
    }
}

pub(crate) fn big_log2(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 64 {
        return (n.to_u64().unwrap() as f64).log2();
    }
    // the leading 64 bits carry all the precision an f64 can hold
    let top = (n >> (bits - 64)).to_u64().unwrap() as f64;
    top.log2() + (bits - 64) as f64
}

impl From<u64> for GoedelNumber {
    fn from(n: u64) -> Self {
        GoedelNumber::Exact(BigUint::from(n))
    }
}

impl From<BigUint> for GoedelNumber {
    fn from(n: BigUint) -> Self {
        GoedelNumber::Exact(n)
    }
}

impl fmt::Display for GoedelNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoedelNumber::Exact(n) => write!(f, "{n}"),
            GoedelNumber::Factored(pairs) if pairs.is_empty() => f.write_str("1"),
            GoedelNumber::Factored(pairs) => {
                for (idx, (i, e)) in pairs.iter().enumerate() {
                    if idx > 0 {
                        f.write_str(" * ")?;
                    }
                    match e {
                        GoedelNumber::Exact(_) => write!(f, "q{i}^{e}")?,
                        GoedelNumber::Factored(_) => write!(f, "q{i}^({e})")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl FromStr for GoedelNumber {
    type Err = CodecError;

    /// Accepts a decimal string or the JSON factored form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.starts_with('[') {
            serde_json::from_str(s).map_err(|e| CodecError::Malformed(e.to_string()))
        } else {
            s.parse::<BigUint>()
                .map(GoedelNumber::Exact)
                .map_err(|_| CodecError::Malformed(format!("not a natural number: `{s}`")))
        }
    }
}

impl Serialize for GoedelNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            GoedelNumber::Exact(n) => serializer.serialize_str(&n.to_str_radix(10)),
            GoedelNumber::Factored(pairs) => {
                let mut seq = serializer.serialize_seq(Some(pairs.len()))?;
                for (i, e) in pairs {
                    seq.serialize_element(&(i, e))?;
                }
                seq.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for GoedelNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct GoedelVisitor;

        impl<'de> Visitor<'de> for GoedelVisitor {
            type Value = GoedelNumber;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a decimal string, an integer, or an array of [index, exponent] pairs")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                Ok(GoedelNumber::from(v))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                v.parse::<BigUint>()
                    .map(GoedelNumber::Exact)
                    .map_err(|_| E::custom(format!("not a natural number: `{v}`")))
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut pairs = Vec::new();
                while let Some(pair) = seq.next_element::<(usize, GoedelNumber)>()? {
                    pairs.push(pair);
                }
                Ok(GoedelNumber::Factored(pairs))
            }
        }

        deserializer.deserialize_any(GoedelVisitor)
    }
}

/// Serde adapter writing a [`BigUint`] as a decimal string.
pub mod decimal {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        match GoedelNumber::deserialize(d)? {
            GoedelNumber::Exact(n) => Ok(n),
            GoedelNumber::Factored(_) => Err(de::Error::custom("expected a decimal number")),
        }
    }
}
