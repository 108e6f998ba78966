//! Coefficient fields: the rationals and prime fields `F_p`.
//!
//! Elements of both fields are stored as [`BigRational`]. For `F_p` the
//! stored value is always the canonical integer representative in `[0, p)`,
//! so structural equality is field equality.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Coeff = BigRational;

/// `Q` (characteristic 0) or `F_p` for a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    characteristic: u64,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec { characteristic: p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic != 0
    }

    fn modulus(&self) -> BigInt {
        BigInt::from(self.characteristic)
    }

    /// Maps an arbitrary rational into the field.
    pub fn reduce(&self, c: &Coeff) -> Result<Coeff> {
        if !self.is_finite() {
            return Ok(c.clone());
        }
        let p = self.modulus();
        let den = c.denom().mod_floor(&p);
        if den.is_zero() {
            return Err(Error::NotInvertible(c.denom().to_string()));
        }
        let inv = den.modpow(&(&p - BigInt::from(2u8)), &p);
        let num = c.numer().mod_floor(&p);
        Ok(BigRational::from_integer((num * inv).mod_floor(&p)))
    }

    pub fn from_int(&self, n: impl Into<BigInt>) -> Coeff {
        let n: BigInt = n.into();
        if self.is_finite() {
            BigRational::from_integer(n.mod_floor(&self.modulus()))
        } else {
            BigRational::from_integer(n)
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.canon(a + b)
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.canon(a - b)
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.canon(a * b)
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.canon(-a)
    }

    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        if a.is_zero() {
            return Err(Error::NotInvertible("0".to_string()));
        }
        if self.is_finite() {
            let p = self.modulus();
            let inv = a.numer().modpow(&(&p - BigInt::from(2u8)), &p);
            Ok(BigRational::from_integer(inv))
        } else {
            Ok(a.recip())
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    // Inputs are integers (or rationals over Q), so the integer reduction is enough.
    fn canon(&self, c: Coeff) -> Coeff {
        if self.is_finite() {
            debug_assert!(c.denom().is_one());
            BigRational::from_integer(c.numer().mod_floor(&self.modulus()))
        } else {
            c
        }
    }

    /// Every element of a finite field in increasing representative order.
    pub fn elements(&self) -> Result<Vec<Coeff>> {
        if !self.is_finite() {
            return Err(Error::NonFiniteField);
        }
        Ok((0..self.characteristic).map(|i| self.from_int(i)).collect())
    }

    /// Coefficient values used by bounded corpora: all of `F_p`, or
    /// `0, 1, -1, ..., b, -b` over `Q`.
    pub fn small_values(&self, bound: u32) -> Vec<Coeff> {
        if self.is_finite() {
            return self.elements().expect("finite field");
        }
        let mut out = alloc::vec![Coeff::zero()];
        for i in 1..=i64::from(bound) {
            out.push(self.from_int(i));
            out.push(self.from_int(-i));
        }
        out
    }

    /// Whether `c` prints with a leading minus sign.
    pub fn is_negative(&self, c: &Coeff) -> bool {
        !self.is_finite() && c.is_negative()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_finite() {
            write!(f, "Fp:{}", self.characteristic)
        } else {
            f.write_str("Q")
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::RATIONALS);
        }
        match s.strip_prefix("Fp:").map(|p| p.trim().parse::<u64>()) {
            Some(Ok(p)) => FieldSpec::prime(p),
            _ => Err(Error::InvalidSpec(alloc::format!("unknown field '{}'", s))),
        }
    }
}
