//! Exact rational scalars, dense matrices and canonical subspaces.
//!
//! Everything downstream is computed over the rationals, so ranks, kernels and
//! spans are exact and no tolerance appears anywhere in the crate.

mod mat;
pub mod modp;
mod span;
mod subspace;

pub use mat::{Mat, Rref};
pub use span::SpanBuilder;
pub use subspace::{Combine, Subspace};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Scalar = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: expected {expected}, found {found}")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("ragged rows: row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("malformed rational literal {0:?}")]
    BadRational(String),
}

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn ints(values: &[i64]) -> Vec<Scalar> {
    values.iter().map(|&v| int(v)).collect()
}

/// Parses `"p/q"` or `"p"` (surrounding whitespace allowed).
pub fn parse_scalar(text: &str) -> Result<Scalar, LinalgError> {
    let t = text.trim();
    let bad = || LinalgError::BadRational(text.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let valid = |s: &str, signed: bool| {
        let digits = if signed {
            s.strip_prefix(['-', '+']).unwrap_or(s)
        } else {
            s
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(n, d))
}

/// Comma separated rational vector, e.g. `"1,0,3/2"`.
pub fn parse_vector(text: &str) -> Result<Vec<Scalar>, LinalgError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_scalar).collect()
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_scalar(s: &Scalar) -> String {
    s.to_string()
}

pub fn format_vector(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// `acc += c * v`, skipping zero entries.
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

pub fn scale_vec(v: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    v.iter().map(|x| x * c).collect()
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// The integer vector with coprime entries on the line through `v`, with a
/// positive leading entry; zero stays zero.
pub fn primitive(v: &[Scalar]) -> Vec<Scalar> {
    use num_integer::Integer;
    let Some(lead) = v.iter().find(|x| !x.is_zero()) else {
        return v.to_vec();
    };
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Scalar::from_integer(den.clone())).to_integer())
        .collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if lead.is_negative() {
        g = -g;
    }
    ints.into_iter()
        .map(|x| Scalar::from_integer(x / &g))
        .collect()
}

pub fn factorial(n: usize) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Scalar::from_integer(acc)
}

/// Serde adapters that write rationals as `"p/q"` strings.
pub mod serde_scalar {
    use super::{format_scalar, parse_scalar, Scalar};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Scalar, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format_scalar(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Scalar, D::Error> {
        let s = String::deserialize(de)?;
        parse_scalar(&s).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::super::{format_scalar, parse_scalar, Scalar};
        use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(value: &[Scalar], ser: S) -> Result<S::Ok, S::Error> {
            let mut seq = ser.serialize_seq(Some(value.len()))?;
            for v in value {
                seq.serialize_element(&format_scalar(v))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Scalar>, D::Error> {
            let raw = Vec::<String>::deserialize(de)?;
            raw.iter()
                .map(|s| parse_scalar(s).map_err(D::Error::custom))
                .collect()
        }
    }

    pub mod vec2 {
        use super::super::{format_scalar, Scalar};
        use serde::{ser::SerializeSeq, Serializer};

        pub fn serialize<S: Serializer>(value: &[Vec<Scalar>], ser: S) -> Result<S::Ok, S::Error> {
            let mut seq = ser.serialize_seq(Some(value.len()))?;
            for row in value {
                let row: Vec<String> = row.iter().map(format_scalar).collect();
                seq.serialize_element(&row)?;
            }
            seq.end()
        }
    }
}
