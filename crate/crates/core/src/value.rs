//! The value group: rationals extended by the two infinities.

use core::fmt;
use core::ops::Add;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// An element of `Q ∪ {−∞, +∞}`.
///
/// `Infinity` is the value of the zero polynomial. `NegInfinity` only
/// appears as ε of a nonzero constant and is never added to anything.
/// The derived order is the intended one since the variants are declared
/// from smallest to largest.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    NegInfinity,
    Finite(BigRational),
    Infinity,
}

impl Value {
    pub fn zero() -> Self {
        Value::Finite(BigRational::zero())
    }

    pub fn int(n: i64) -> Self {
        Value::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Value::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Value::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Value::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Value::NegInfinity => true,
            Value::Finite(q) => q.is_negative(),
            Value::Infinity => false,
        }
    }

    /// `n · self` for a natural number `n`; `0 · ∞` is taken to be 0.
    pub fn times(&self, n: u64) -> Value {
        if n == 0 {
            return Value::zero();
        }
        match self {
            Value::Finite(q) => Value::Finite(q * BigRational::from_integer(BigInt::from(n))),
            other => other.clone(),
        }
    }
}

impl From<BigRational> for Value {
    fn from(q: BigRational) -> Self {
        Value::Finite(q)
    }
}

impl Add for &Value {
    type Output = Value;

    fn add(self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::NegInfinity, _) | (_, Value::NegInfinity) => {
                panic!("-inf is a sentinel and cannot be added")
            }
            (Value::Infinity, _) | (_, Value::Infinity) => Value::Infinity,
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a + b),
        }
    }
}

impl Add for Value {
    type Output = Value;

    fn add(self, rhs: Value) -> Value {
        &self + &rhs
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::NegInfinity => f.write_str("-inf"),
            Value::Infinity => f.write_str("inf"),
            Value::Finite(q) => write!(f, "{}", q),
        }
    }
}

/// Error returned when a string is not a value literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseValueError;

impl fmt::Display for ParseValueError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected an integer, a fraction a/b, 'inf' or '-inf'")
    }
}

impl FromStr for Value {
    type Err = ParseValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "inf" | "+inf" => return Ok(Value::Infinity),
            "-inf" => return Ok(Value::NegInfinity),
            _ => {}
        }
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| ParseValueError)?;
        let den: BigInt = den.parse().map_err(|_| ParseValueError)?;
        if den.is_zero() {
            return Err(ParseValueError);
        }
        Ok(Value::Finite(BigRational::new(num, den)))
    }
}
