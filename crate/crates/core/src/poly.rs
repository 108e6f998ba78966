//! Dense univariate polynomials over a [`FieldSpec`] and Q-expansions.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Coeff, FieldSpec};

/// A polynomial in `x`, coefficients lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is
/// the empty vector and `degree()` is `None` for it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Coeff>,
}

impl Poly {
    pub fn zero(field: FieldSpec) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Poly::constant(field, Coeff::one())
    }

    pub fn x(field: FieldSpec) -> Self {
        Poly::monomial(field, Coeff::one(), 1)
    }

    /// `c` reduced into the field.
    pub fn constant(field: FieldSpec, c: Coeff) -> Self {
        Poly::monomial(field, c, 0)
    }

    pub fn monomial(field: FieldSpec, c: Coeff, degree: usize) -> Self {
        let c = field.reduce(&c).expect("coefficient not representable in field");
        let mut coeffs = vec![Coeff::zero(); degree];
        coeffs.push(c);
        Poly::from_reduced(field, coeffs)
    }

    /// Builds a polynomial from arbitrary rationals, reducing them into the field.
    pub fn new(field: FieldSpec, coeffs: Vec<Coeff>) -> Result<Self> {
        let coeffs = coeffs.iter().map(|c| field.reduce(c)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_reduced(field, coeffs))
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_ints(field: FieldSpec, coeffs: &[i64]) -> Self {
        Poly::from_reduced(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub(crate) fn from_reduced(field: FieldSpec, mut coeffs: Vec<Coeff>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Coeff {
        self.coeffs.get(i).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coefficient(&self) -> Option<&Coeff> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        let c = self.field.reduce(c).expect("scalar not representable in field");
        Poly::from_reduced(self.field, self.coeffs.iter().map(|a| self.field.mul(a, &c)).collect())
    }

    pub fn pow(&self, mut n: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Division by a monic divisor of degree at least one.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if self.field != divisor.field {
            return Err(Error::FieldMismatch);
        }
        match divisor.degree() {
            None => return Err(Error::DivisionByZero),
            Some(0) => return Err(Error::ConstantDivisor),
            Some(_) => {}
        }
        if !divisor.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        Ok(self.long_division(divisor))
    }

    /// Euclidean division by any nonzero divisor.
    pub fn div_rem_general(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if self.field != divisor.field {
            return Err(Error::FieldMismatch);
        }
        let lc = divisor.leading_coefficient().ok_or(Error::DivisionByZero)?;
        let inv = self.field.inv(lc)?;
        let (q, r) = self.long_division(&divisor.scale(&inv));
        Ok((q.scale(&inv), r))
    }

    // Divisor assumed monic and nonzero.
    fn long_division(&self, divisor: &Poly) -> (Poly, Poly) {
        let field = self.field;
        let dd = divisor.degree().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(field), self.clone());
        }
        let mut quot = vec![Coeff::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = field.sub(&rem[i + j], &field.mul(&c, d));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::from_reduced(field, quot), Poly::from_reduced(field, rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem_general(&b).expect("nonzero divisor, same field");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem_general(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// The base-`q` positional expansion `f = Σ f_i q^i` with `deg f_i < deg q`.
    pub fn expand(&self, q: &Poly) -> Result<Expansion> {
        // validates q before looping
        let (mut quot, mut rem) = self.divrem(q)?;
        let mut parts = Vec::new();
        let mut i = 0;
        loop {
            if !rem.is_zero() {
                parts.push((i, rem));
            }
            if quot.is_zero() {
                break;
            }
            i += 1;
            (quot, rem) = quot.divrem(q)?;
        }
        Ok(Expansion { base: q.clone(), parts })
    }

    /// All monic polynomials of the given degree over a finite field, ordered
    /// lexicographically by `(a_{d-1}, ..., a_0)` with representatives `0 < 1 < ... < p-1`.
    pub fn monic_of_degree(field: FieldSpec, degree: usize) -> Result<impl Iterator<Item = Poly>> {
        let p = field.characteristic();
        if p == 0 {
            return Err(Error::NonFiniteField);
        }
        let count = u32::try_from(degree)
            .ok()
            .and_then(|d| p.checked_pow(d))
            .ok_or_else(|| Error::Unsupported(alloc::format!("F_{}^{} candidates", p, degree)))?;
        Ok((0..count).map(move |mut n| {
            let mut coeffs = vec![Coeff::zero(); degree + 1];
            coeffs[degree] = Coeff::one();
            for c in coeffs.iter_mut().take(degree) {
                *c = field.from_int(n % p);
                n /= p;
            }
            Poly::from_reduced(field, coeffs)
        }))
    }

    pub fn eval(&self, at: &Coeff) -> Coeff {
        let at = self.field.reduce(at).expect("point not representable in field");
        self.coeffs
            .iter()
            .rev()
            .fold(Coeff::zero(), |acc, c| self.field.add(&self.field.mul(&acc, &at), c))
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "polynomials over different fields");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.field.add(&self.coeff(i), &rhs.coeff(i))).collect();
        Poly::from_reduced(self.field, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::from_reduced(self.field, self.coeffs.iter().map(|c| self.field.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "polynomials over different fields");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![Coeff::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = self.field.add(&out[i + j], &self.field.mul(a, b));
            }
        }
        Poly::from_reduced(self.field, out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// Writes `Σ c·m` in the shared text grammar, e.g. `3*x^2 - x + 5/2`.
pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    field: FieldSpec,
    terms: impl Iterator<Item = (&'a Coeff, alloc::string::String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        let negative = field.is_negative(c);
        let abs = if negative { -c } else { c.clone() };
        if first {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        first = false;
        if mono.is_empty() {
            write!(f, "{}", abs)?;
        } else if abs.is_one() {
            f.write_str(&mono)?;
        } else {
            write!(f, "{}*{}", abs, mono)?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

pub(crate) fn power_name(var: &str, e: u32) -> alloc::string::String {
    match e {
        0 => alloc::string::String::new(),
        1 => alloc::string::String::from(var),
        _ => alloc::format!("{}^{}", var, e),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c, power_name("x", i as u32)));
        write_terms(f, self.field, terms)
    }
}

/// `f = Σ f_i · base^i` with every `f_i` zero or of degree below `deg(base)`.
///
/// Only nonzero parts are stored, in increasing index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    base: Poly,
    parts: Vec<(usize, Poly)>,
}

impl Expansion {
    pub fn base(&self) -> &Poly {
        &self.base
    }

    pub fn parts(&self) -> &[(usize, Poly)] {
        &self.parts
    }

    /// The coefficient `f_i`, zero when absent.
    pub fn part(&self, i: usize) -> Poly {
        self.parts
            .iter()
            .find(|(j, _)| *j == i)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(|| Poly::zero(self.base.field))
    }

    pub fn reconstruct(&self) -> Poly {
        let field = self.base.field;
        let mut acc = Poly::zero(field);
        let mut power = Poly::one(field);
        let mut at = 0;
        for (i, part) in &self.parts {
            while at < *i {
                power = &power * &self.base;
                at += 1;
            }
            acc = &acc + &(part * &power);
        }
        acc
    }
}
