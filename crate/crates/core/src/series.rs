//! Truncated generalized power series `Σ c_e t^e` with rational exponents.
//!
//! A series carries a precision `P`: every exponent below `P` is known
//! exactly, nothing is known at or above `P`. Exact series (finite sums)
//! have precision `+∞`. Products and sums propagate precision so that every
//! stored coefficient is a certificate, never an approximation.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bivar::BivarPoly;
use crate::error::{Error, Result};
use crate::field::{Coeff, FieldSpec};
use crate::value::Value;

pub type Exponent = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSeries {
    field: FieldSpec,
    terms: BTreeMap<Exponent, Coeff>,
    precision: Value,
}

impl GenSeries {
    /// Builds a series from `(exponent, coefficient)` pairs, summing repeats
    /// and dropping everything at or above `precision`.
    pub fn new(
        field: FieldSpec,
        terms: impl IntoIterator<Item = (Exponent, Coeff)>,
        precision: Value,
    ) -> Result<Self> {
        if !matches!(precision, Value::Finite(_) | Value::Infinity) {
            return Err(Error::InvalidSpec("series precision must be finite or inf".into()));
        }
        let mut s = GenSeries { field, terms: BTreeMap::new(), precision };
        for (e, c) in terms {
            let c = field.reduce(&c)?;
            s.accumulate(e, c);
        }
        Ok(s)
    }

    pub fn exact(field: FieldSpec, terms: impl IntoIterator<Item = (Exponent, Coeff)>) -> Result<Self> {
        GenSeries::new(field, terms, Value::Infinity)
    }

    pub fn zero(field: FieldSpec) -> Self {
        GenSeries { field, terms: BTreeMap::new(), precision: Value::Infinity }
    }

    pub fn constant(field: FieldSpec, c: Coeff) -> Self {
        GenSeries::monomial(field, c, Exponent::zero())
    }

    /// `c · t^e`, exact.
    pub fn monomial(field: FieldSpec, c: Coeff, e: Exponent) -> Self {
        GenSeries::exact(field, [(e, c)]).expect("coefficient not representable in field")
    }

    /// `Σ_{i ≥ 1, i² < bound} t^{i²}` with precision `bound`.
    pub fn squares_below(field: FieldSpec, bound: u64) -> Self {
        let mut terms = BTreeMap::new();
        let mut i: u64 = 1;
        while i * i < bound {
            terms.insert(Exponent::from_integer(BigInt::from(i * i)), Coeff::one());
            i += 1;
        }
        GenSeries { field, terms, precision: Value::Finite(Exponent::from_integer(BigInt::from(bound))) }
    }

    fn accumulate(&mut self, e: Exponent, c: Coeff) {
        if c.is_zero() || Value::Finite(e.clone()) >= self.precision {
            return;
        }
        let sum = match self.terms.get(&e) {
            Some(old) => self.field.add(old, &c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn precision(&self) -> &Value {
        &self.precision
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> Coeff {
        self.terms.get(e).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.precision == Value::Infinity
    }

    /// Smallest support exponent, or the precision when the support is empty.
    fn lead_or_precision(&self) -> Value {
        match self.terms.keys().next() {
            Some(e) => Value::Finite(e.clone()),
            None => self.precision.clone(),
        }
    }

    /// The valuation `ν_t` read off the series.
    ///
    /// Fails with [`Error::PrecisionExhausted`] when nothing below the
    /// precision survived: the true order is then at least the precision
    /// but otherwise unknown.
    pub fn leading_exponent(&self) -> Result<Value> {
        match self.terms.keys().next() {
            Some(e) => Ok(Value::Finite(e.clone())),
            None if self.precision == Value::Infinity => Ok(Value::Infinity),
            None => Err(Error::PrecisionExhausted { precision: self.precision.clone() }),
        }
    }

    /// Coefficient at the leading exponent; `None` for the exact zero series.
    pub fn leading_coefficient(&self) -> Result<Option<Coeff>> {
        self.leading_exponent()?;
        Ok(self.terms.values().next().cloned())
    }

    pub fn try_add(&self, other: &GenSeries) -> Result<GenSeries> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let precision = self.precision.clone().min(other.precision.clone());
        let mut out = GenSeries { field: self.field, terms: BTreeMap::new(), precision };
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.accumulate(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &GenSeries) -> Result<GenSeries> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &GenSeries) -> Result<GenSeries> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let precision =
            (&self.precision + &other.lead_or_precision()).min(&other.precision + &self.lead_or_precision());
        let mut out = GenSeries { field: self.field, terms: BTreeMap::new(), precision };
        for (e, a) in &self.terms {
            for (g, b) in &other.terms {
                out.accumulate(e + g, self.field.mul(a, b));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> GenSeries {
        let c = self.field.reduce(c).expect("scalar not representable in field");
        let mut out = GenSeries { field: self.field, terms: BTreeMap::new(), precision: self.precision.clone() };
        for (e, a) in &self.terms {
            out.accumulate(e.clone(), self.field.mul(a, &c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> GenSeries {
        let mut acc = GenSeries::constant(self.field, Coeff::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &GenSeries {
    type Output = GenSeries;

    fn add(self, rhs: &GenSeries) -> GenSeries {
        self.try_add(rhs).expect("series over different fields")
    }
}

impl Sub for &GenSeries {
    type Output = GenSeries;

    fn sub(self, rhs: &GenSeries) -> GenSeries {
        self.try_sub(rhs).expect("series over different fields")
    }
}

impl Mul for &GenSeries {
    type Output = GenSeries;

    fn mul(self, rhs: &GenSeries) -> GenSeries {
        self.try_mul(rhs).expect("series over different fields")
    }
}

impl Neg for &GenSeries {
    type Output = GenSeries;

    fn neg(self) -> GenSeries {
        self.scale(&-Coeff::one())
    }
}

fn write_exponent(f: &mut fmt::Formatter<'_>, e: &Exponent) -> fmt::Result {
    write!(f, "t^({})", e)
}

impl fmt::Display for GenSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            let negative = self.field.is_negative(c);
            let abs = if negative { -c } else { c.clone() };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            if e.is_zero() {
                write!(f, "{}", abs)?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", abs)?;
                }
                write_exponent(f, e)?;
            }
        }
        if let Value::Finite(p) = &self.precision {
            if !first {
                f.write_str(" + ")?;
            }
            f.write_str("O(")?;
            write_exponent(f, p)?;
            f.write_str(")")?;
        } else if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Where the image of a variable comes from.
///
/// `Squares` can be regenerated at a larger bound, which is what lets the
/// embedding valuation retry after [`Error::PrecisionExhausted`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesSource {
    Fixed(GenSeries),
    /// `Σ_{i ≥ 1, i² < bound} t^{i²}` with precision `bound`.
    Squares { field: FieldSpec, bound: u64 },
}

impl SeriesSource {
    /// `squares(n)`: the first `n` terms, precision `(n + 1)²`.
    pub fn squares(field: FieldSpec, terms: u64) -> Self {
        SeriesSource::Squares { field, bound: (terms + 1) * (terms + 1) }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            SeriesSource::Fixed(s) => s.field(),
            SeriesSource::Squares { field, .. } => *field,
        }
    }

    /// The bound after `level` doublings, if it stays within `cap`.
    pub fn refined_bound(&self, level: u32, cap: u64) -> Option<u64> {
        match self {
            SeriesSource::Fixed(_) => None,
            SeriesSource::Squares { bound, .. } => {
                let b = bound.checked_shl(level)?;
                (level == 0 || b <= cap).then_some(b)
            }
        }
    }

    pub fn is_refinable(&self) -> bool {
        matches!(self, SeriesSource::Squares { .. })
    }

    /// The series after `level` doublings of the trusted bound.
    pub fn materialize(&self, level: u32) -> GenSeries {
        match self {
            SeriesSource::Fixed(s) => s.clone(),
            SeriesSource::Squares { field, bound } => GenSeries::squares_below(*field, bound << level),
        }
    }
}

impl fmt::Display for SeriesSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesSource::Fixed(s) => write!(f, "{}", s),
            SeriesSource::Squares { bound, .. } => {
                let n = (1..).take_while(|i: &u64| (i + 1) * (i + 1) <= *bound).last().unwrap_or(0);
                if (n + 1) * (n + 1) == *bound {
                    write!(f, "squares({})", n)
                } else {
                    write!(f, "squares_below({})", bound)
                }
            }
        }
    }
}

/// Evaluates `p(x_image, y_image)` in the series ring.
pub fn embed_eval(p: &BivarPoly, x: &GenSeries, y: Option<&GenSeries>) -> Result<GenSeries> {
    let field = p.field();
    if x.field() != field || y.is_some_and(|y| y.field() != field) {
        return Err(Error::FieldMismatch);
    }
    let max_i = p.terms().map(|((i, _), _)| *i).max().unwrap_or(0);
    let max_j = p.terms().map(|((_, j), _)| *j).max().unwrap_or(0);
    if max_j > 0 && y.is_none() {
        return Err(Error::Unsupported("polynomial involves y but the embedding has no image for y".into()));
    }
    let powers = |s: &GenSeries, n: u32| {
        let mut v: Vec<GenSeries> = Vec::with_capacity(n as usize + 1);
        v.push(GenSeries::constant(field, Coeff::one()));
        for k in 1..=n as usize {
            let next = &v[k - 1] * s;
            v.push(next);
        }
        v
    };
    let xp = powers(x, max_i);
    let yp = match y {
        Some(y) => powers(y, max_j),
        None => alloc::vec![GenSeries::constant(field, Coeff::one())],
    };
    let mut acc = GenSeries::zero(field);
    for ((i, j), c) in p.terms() {
        let term = (&xp[*i as usize] * &yp[*j as usize]).scale(c);
        acc = &acc + &term;
    }
    Ok(acc)
}
