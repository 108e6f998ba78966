//! Computable valuations, described by a small construction tree.
//!
//! * `Trivial` / `PAdic` are valuations on the coefficient field.
//! * `Gauss` extends a base valuation to `K[x]` by `ν(Σ a_i x^i) = min ν(a_i) + iγ`.
//! * `Embedding` pulls back `ν_t` along `x ↦ s_x, y ↦ s_y` into generalized series.
//! * `Truncation` is `ν_Q` of an ambient valuation.
//! * `MonomialBivariate` weighs `x^i y^j` by `i·w_x + j·w_y`.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use alloc::format;
use alloc::string::ToString;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::bivar::BivarPoly;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::field::{Coeff, FieldSpec};
use crate::poly::Poly;
use crate::series::{embed_eval, GenSeries, SeriesSource};
use crate::value::Value;

/// Largest trusted series bound the embedding retry loop may reach.
pub const DEFAULT_MAX_PRECISION: u64 = 10_000;

/// The images of `x` (and optionally `y`) in the series ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    field: FieldSpec,
    x: SeriesSource,
    y: Option<SeriesSource>,
    max_precision: u64,
}

impl Embedding {
    pub fn new(x: SeriesSource, y: Option<SeriesSource>) -> Result<Self> {
        let field = x.field();
        if y.as_ref().is_some_and(|y| y.field() != field) {
            return Err(Error::FieldMismatch);
        }
        for src in core::iter::once(&x).chain(y.as_ref()) {
            if src.materialize(0).terms().next().is_none() {
                return Err(Error::InvalidSpec(format!("image {} has no nonzero term", src)));
            }
        }
        Ok(Embedding { field, x, y, max_precision: DEFAULT_MAX_PRECISION })
    }

    pub fn with_max_precision(mut self, cap: u64) -> Self {
        self.max_precision = cap;
        self
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn x_image(&self) -> &SeriesSource {
        &self.x
    }

    pub fn y_image(&self) -> Option<&SeriesSource> {
        self.y.as_ref()
    }

    pub fn max_precision(&self) -> u64 {
        self.max_precision
    }

    fn can_refine(&self, level: u32) -> bool {
        let mut refinable = core::iter::once(&self.x).chain(self.y.as_ref()).filter(|s| s.is_refinable()).peekable();
        refinable.peek().is_some() && refinable.all(|s| s.refined_bound(level, self.max_precision).is_some())
    }

    /// The image of `f`, re-evaluated at doubled bounds until its leading
    /// exponent is determined. Returns the series and the refinement level.
    pub fn image(&self, f: &BivarPoly) -> Result<(GenSeries, u32)> {
        let mut level = 0;
        loop {
            let x = self.x.materialize(level);
            let y = self.y.as_ref().map(|s| s.materialize(level));
            let s = embed_eval(f, &x, y.as_ref())?;
            match s.leading_exponent() {
                Ok(_) => return Ok((s, level)),
                Err(Error::PrecisionExhausted { .. }) if self.can_refine(level + 1) => level += 1,
                Err(e) => return Err(e),
            }
        }
    }

    fn lead_of_image(src: &SeriesSource) -> Value {
        src.materialize(0).leading_exponent().expect("images have a nonzero term")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValuationSpec {
    Trivial(FieldSpec),
    PAdic(u64),
    Gauss { base: Box<ValuationSpec>, gamma: Coeff },
    Embedding(Embedding),
    Truncation { ambient: Box<ValuationSpec>, key: Poly },
    MonomialBivariate { field: FieldSpec, weight_x: Coeff, weight_y: Coeff },
}

/// A computed value together with whether it needed a precision retry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValReport {
    pub value: Value,
    /// `false` only when an embedding had to be re-evaluated at a larger bound.
    pub exact: bool,
}

impl ValReport {
    fn exact(value: Value) -> Self {
        ValReport { value, exact: true }
    }
}

enum Form {
    Uni(Poly),
    Bi(BivarPoly),
}

fn p_adic_order(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

impl ValuationSpec {
    pub fn trivial(field: FieldSpec) -> Self {
        ValuationSpec::Trivial(field)
    }

    pub fn p_adic(p: u64) -> Result<Self> {
        FieldSpec::prime(p)?;
        Ok(ValuationSpec::PAdic(p))
    }

    pub fn gauss(base: ValuationSpec, gamma: Coeff) -> Result<Self> {
        if !matches!(base, ValuationSpec::Trivial(_) | ValuationSpec::PAdic(_)) {
            return Err(Error::InvalidSpec("gauss needs a base valuation on K".into()));
        }
        Ok(ValuationSpec::Gauss { base: Box::new(base), gamma })
    }

    pub fn embedding(embedding: Embedding) -> Self {
        ValuationSpec::Embedding(embedding)
    }

    pub fn truncation(ambient: ValuationSpec, key: Poly) -> Result<Self> {
        if !key.is_monic() || key.degree() == Some(0) {
            return Err(Error::InvalidSpec(format!("truncation needs a monic Q of degree >= 1, got {}", key)));
        }
        if key.field() != ambient.field() {
            return Err(Error::FieldMismatch);
        }
        if ambient.is_bivariate() {
            return Err(Error::InvalidSpec("truncation needs a univariate ambient valuation".into()));
        }
        Ok(ValuationSpec::Truncation { ambient: Box::new(ambient), key })
    }

    pub fn monomial_bivariate(field: FieldSpec, weight_x: Coeff, weight_y: Coeff) -> Self {
        ValuationSpec::MonomialBivariate { field, weight_x, weight_y }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            ValuationSpec::Trivial(f) => *f,
            ValuationSpec::PAdic(_) => FieldSpec::RATIONALS,
            ValuationSpec::Gauss { base, .. } => base.field(),
            ValuationSpec::Embedding(e) => e.field,
            ValuationSpec::Truncation { ambient, .. } => ambient.field(),
            ValuationSpec::MonomialBivariate { field, .. } => *field,
        }
    }

    /// Whether the valuation is defined on `k[x, y]` rather than `K[x]`.
    pub fn is_bivariate(&self) -> bool {
        match self {
            ValuationSpec::Embedding(e) => e.y.is_some(),
            ValuationSpec::MonomialBivariate { .. } => true,
            _ => false,
        }
    }

    /// Whether the restriction to the coefficient field is trivial.
    pub fn base_is_trivial(&self) -> bool {
        match self {
            ValuationSpec::Trivial(_) => true,
            ValuationSpec::PAdic(_) => false,
            ValuationSpec::Gauss { base, .. } => base.base_is_trivial(),
            ValuationSpec::Embedding(_) | ValuationSpec::MonomialBivariate { .. } => true,
            ValuationSpec::Truncation { ambient, .. } => ambient.base_is_trivial(),
        }
    }

    /// Residue field equals the constants `k`, when this can be decided structurally.
    pub fn residue_field_is_constants(&self) -> Option<bool> {
        match self {
            ValuationSpec::Trivial(_) => Some(true),
            ValuationSpec::PAdic(_) => Some(false),
            ValuationSpec::Gauss { base, gamma } => Some(base.base_is_trivial() && !gamma.is_zero()),
            ValuationSpec::Embedding(_) => Some(true),
            // x^b / y^a always has value 0 and a transcendental residue
            ValuationSpec::MonomialBivariate { .. } => Some(false),
            ValuationSpec::Truncation { .. } => None,
        }
    }

    /// ν of a field element.
    pub fn value_of_constant(&self, c: &Coeff) -> Value {
        if c.is_zero() {
            return Value::Infinity;
        }
        match self {
            ValuationSpec::PAdic(p) => {
                let p = BigInt::from(*p);
                Value::int(p_adic_order(c.numer(), &p) - p_adic_order(c.denom(), &p))
            }
            ValuationSpec::Gauss { base, .. } => base.value_of_constant(c),
            ValuationSpec::Truncation { ambient, .. } => ambient.value_of_constant(c),
            _ => Value::zero(),
        }
    }

    fn form<E: Element>(&self, f: &E) -> Result<Form> {
        if f.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        match self {
            ValuationSpec::Embedding(_) | ValuationSpec::MonomialBivariate { .. } => Ok(Form::Bi(f.to_bivariate())),
            _ => f.to_univariate().map(Form::Uni).ok_or_else(|| {
                Error::Unsupported(format!("{} involves y but the valuation is on K[x]", f))
            }),
        }
    }

    /// ν(f) with the retry bookkeeping.
    pub fn value_of<E: Element>(&self, f: &E) -> Result<ValReport> {
        match self.form(f)? {
            Form::Uni(p) => self.value_univariate(&p),
            Form::Bi(b) => self.value_bivariate(&b),
        }
    }

    /// ν(f).
    pub fn value<E: Element>(&self, f: &E) -> Result<Value> {
        self.value_of(f).map(|r| r.value)
    }

    fn value_univariate(&self, f: &Poly) -> Result<ValReport> {
        match self {
            ValuationSpec::Trivial(_) | ValuationSpec::PAdic(_) => {
                if !f.is_constant() {
                    return Err(Error::Unsupported(format!("{} is a valuation on K; {} is not a constant", self, f)));
                }
                Ok(ValReport::exact(self.value_of_constant(&f.coeff(0))))
            }
            ValuationSpec::Gauss { base, gamma } => {
                let value = f
                    .coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| !a.is_zero())
                    .map(|(i, a)| base.value_of_constant(a) + Value::Finite(gamma * Coeff::from_integer(i.into())))
                    .min()
                    .unwrap_or(Value::Infinity);
                Ok(ValReport::exact(value))
            }
            ValuationSpec::Truncation { ambient, key } => {
                let expansion = f.expand(key)?;
                let key_value = ambient.value_univariate(key)?;
                let mut exact = key_value.exact;
                let mut best = Value::Infinity;
                for (i, part) in expansion.parts() {
                    let r = ambient.value_univariate(part)?;
                    exact &= r.exact;
                    best = best.min(r.value + key_value.value.times(*i as u64));
                }
                Ok(ValReport { value: best, exact })
            }
            ValuationSpec::Embedding(_) | ValuationSpec::MonomialBivariate { .. } => {
                self.value_bivariate(&BivarPoly::from(f))
            }
        }
    }

    fn value_bivariate(&self, f: &BivarPoly) -> Result<ValReport> {
        match self {
            ValuationSpec::Embedding(e) => {
                let (s, level) = e.image(f)?;
                Ok(ValReport { value: s.leading_exponent()?, exact: level == 0 })
            }
            ValuationSpec::MonomialBivariate { weight_x, weight_y, .. } => {
                let value = f
                    .terms()
                    .map(|((i, j), _)| {
                        Value::Finite(
                            weight_x * Coeff::from_integer((*i).into()) + weight_y * Coeff::from_integer((*j).into()),
                        )
                    })
                    .min()
                    .unwrap_or(Value::Infinity);
                Ok(ValReport::exact(value))
            }
            _ => match f.to_univariate() {
                Some(p) => self.value_univariate(&p),
                None => Err(Error::Unsupported(format!("{} involves y but the valuation is on K[x]", f))),
            },
        }
    }

    /// The truncation `ν_Q(f)` of this valuation.
    pub fn nu_q(&self, key: &Poly, f: &Poly) -> Result<Value> {
        ValuationSpec::truncation(self.clone(), key.clone())?.value(f)
    }

    /// Values of the variables, `[ν(x)]` or `[ν(x), ν(y)]`.
    pub fn variable_values(&self) -> Result<alloc::vec::Vec<Value>> {
        let field = self.field();
        match self {
            ValuationSpec::Embedding(e) => Ok(core::iter::once(&e.x)
                .chain(e.y.as_ref())
                .map(Embedding::lead_of_image)
                .collect()),
            ValuationSpec::MonomialBivariate { weight_x, weight_y, .. } => {
                Ok(alloc::vec![Value::Finite(weight_x.clone()), Value::Finite(weight_y.clone())])
            }
            ValuationSpec::Trivial(_) | ValuationSpec::PAdic(_) => Ok(alloc::vec::Vec::new()),
            _ => Ok(alloc::vec![self.value(&Poly::x(field))?]),
        }
    }

    /// Centeredness via the structural criterion: trivial on the constants
    /// and every variable has non-negative value.
    pub fn is_centered(&self) -> bool {
        if !self.base_is_trivial() {
            return false;
        }
        match self.variable_values() {
            Ok(vs) => vs.iter().all(|v| !v.is_negative()),
            Err(_) => false,
        }
    }

    /// The constant `z` with `ν(f − z·g) > ν(f)`, if one exists.
    ///
    /// Requires `ν(f) = ν(g)` finite and a trivial base valuation, so that
    /// the residue field contains `k` and such a `z` is unique when it exists.
    pub fn initial_ratio<E: Element>(&self, f: &E, g: &E) -> Result<Option<Coeff>> {
        let vf = self.value(f)?;
        let vg = self.value(g)?;
        if vf != vg {
            return Err(Error::UnequalValues { left: vf, right: vg });
        }
        if !vf.is_finite() {
            return Err(Error::Precondition("initial ratio of zero".to_string()));
        }
        if !self.base_is_trivial() {
            return Err(Error::Unsupported("initial ratio needs a trivial base valuation".into()));
        }
        let candidate = match (self.form(f)?, self.form(g)?) {
            (Form::Uni(a), Form::Uni(b)) => self.candidate_univariate(&a, &b)?,
            (Form::Bi(a), Form::Bi(b)) => self.candidate_bivariate(&a, &b)?,
            _ => unreachable!("form depends only on the valuation"),
        };
        match candidate {
            Some(z) if self.value(&f.minus(&g.scaled(&z)))? > vf => Ok(Some(z)),
            _ => Ok(None),
        }
    }

    /// Coordinates of `in_ν(f)` in the graded piece of value `ν(f)`, keyed by
    /// the basis element (term index, or expansion index followed by the
    /// ambient key). Linear in `f` among elements of equal value.
    pub fn initial_coordinates<E: Element>(&self, f: &E) -> Result<BTreeMap<Vec<u32>, Coeff>> {
        if !self.base_is_trivial() {
            return Err(Error::Unsupported("initial coordinates need a trivial base valuation".into()));
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        match self.form(f)? {
            Form::Uni(p) => self.coordinates_univariate(&p),
            Form::Bi(b) => self.coordinates_bivariate(&b),
        }
    }

    fn coordinates_univariate(&self, f: &Poly) -> Result<BTreeMap<Vec<u32>, Coeff>> {
        let target = self.value_univariate(f)?.value;
        let mut out = BTreeMap::new();
        match self {
            ValuationSpec::Trivial(_) | ValuationSpec::Gauss { .. } => {
                let field = self.field();
                for (i, a) in f.coeffs().iter().enumerate() {
                    if !a.is_zero() && self.value_univariate(&Poly::monomial(field, a.clone(), i))?.value == target {
                        out.insert(vec![i as u32], a.clone());
                    }
                }
            }
            ValuationSpec::Truncation { ambient, key } => {
                let kv = ambient.value_univariate(key)?.value;
                for (i, part) in f.expand(key)?.parts() {
                    if ambient.value_univariate(part)?.value + kv.times(*i as u64) != target {
                        continue;
                    }
                    for (mut k, c) in ambient.coordinates_univariate(part)? {
                        k.insert(0, *i as u32);
                        out.insert(k, c);
                    }
                }
            }
            ValuationSpec::PAdic(_) => unreachable!("base is trivial"),
            ValuationSpec::Embedding(_) | ValuationSpec::MonomialBivariate { .. } => {
                return self.coordinates_bivariate(&BivarPoly::from(f));
            }
        }
        Ok(out)
    }

    fn coordinates_bivariate(&self, f: &BivarPoly) -> Result<BTreeMap<Vec<u32>, Coeff>> {
        let mut out = BTreeMap::new();
        match self {
            ValuationSpec::Embedding(e) => {
                let (s, _) = e.image(f)?;
                if let Some(c) = s.leading_coefficient()? {
                    out.insert(Vec::new(), c);
                }
            }
            ValuationSpec::MonomialBivariate { .. } => {
                let field = self.field();
                let target = self.value_bivariate(f)?.value;
                for ((i, j), a) in f.terms() {
                    if self.value_bivariate(&BivarPoly::monomial(field, a.clone(), *i, *j))?.value == target {
                        out.insert(vec![*i, *j], a.clone());
                    }
                }
            }
            _ => match f.to_univariate() {
                Some(p) => return self.coordinates_univariate(&p),
                None => return Err(Error::Unsupported("bivariate input to a valuation on K[x]".into())),
            },
        }
        Ok(out)
    }

    fn candidate_univariate(&self, f: &Poly, g: &Poly) -> Result<Option<Coeff>> {
        let field = self.field();
        match self {
            ValuationSpec::Trivial(_) | ValuationSpec::PAdic(_) => {
                Ok(Some(field.div(&f.coeff(0), &g.coeff(0))?))
            }
            ValuationSpec::Gauss { .. } => {
                let target = self.value_univariate(f)?.value;
                for (i, a) in f.coeffs().iter().enumerate() {
                    if a.is_zero() || self.value_univariate(&Poly::monomial(field, a.clone(), i))?.value != target {
                        continue;
                    }
                    let b = g.coeff(i);
                    return if b.is_zero() { Ok(None) } else { Ok(Some(field.div(a, &b)?)) };
                }
                Ok(None)
            }
            ValuationSpec::Truncation { ambient, key } => {
                let target = self.value_univariate(f)?.value;
                let ef = f.expand(key)?;
                let eg = g.expand(key)?;
                let kv = ambient.value_univariate(key)?.value;
                for (i, part) in ef.parts() {
                    let pv = ambient.value_univariate(part)?.value;
                    if &pv + &kv.times(*i as u64) != target {
                        continue;
                    }
                    let gpart = eg.part(*i);
                    if gpart.is_zero() || ambient.value_univariate(&gpart)?.value != pv {
                        return Ok(None);
                    }
                    return ambient.candidate_univariate(part, &gpart);
                }
                Ok(None)
            }
            ValuationSpec::Embedding(_) | ValuationSpec::MonomialBivariate { .. } => {
                self.candidate_bivariate(&BivarPoly::from(f), &BivarPoly::from(g))
            }
        }
    }

    fn candidate_bivariate(&self, f: &BivarPoly, g: &BivarPoly) -> Result<Option<Coeff>> {
        let field = self.field();
        match self {
            ValuationSpec::Embedding(e) => {
                let (sf, _) = e.image(f)?;
                let (sg, _) = e.image(g)?;
                match (sf.leading_coefficient()?, sg.leading_coefficient()?) {
                    (Some(a), Some(b)) => Ok(Some(field.div(&a, &b)?)),
                    _ => Ok(None),
                }
            }
            ValuationSpec::MonomialBivariate { .. } => {
                let target = self.value_bivariate(f)?.value;
                for ((i, j), a) in f.terms() {
                    let mono = BivarPoly::monomial(field, a.clone(), *i, *j);
                    if self.value_bivariate(&mono)?.value != target {
                        continue;
                    }
                    let b = g.coeff(*i, *j);
                    return if b.is_zero() { Ok(None) } else { Ok(Some(field.div(a, &b)?)) };
                }
                Ok(None)
            }
            _ => match (f.to_univariate(), g.to_univariate()) {
                (Some(a), Some(b)) => self.candidate_univariate(&a, &b),
                _ => Err(Error::Unsupported("bivariate input to a valuation on K[x]".into())),
            },
        }
    }
}

impl fmt::Display for ValuationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationSpec::Trivial(field) => write!(f, "trivial({})", field),
            ValuationSpec::PAdic(p) => write!(f, "p_adic({})", p),
            ValuationSpec::Gauss { base, gamma } => write!(f, "gauss({}, {})", base, gamma),
            ValuationSpec::Embedding(e) => {
                write!(f, "embedding({}: x -> {}", e.field, e.x)?;
                if let Some(y) = &e.y {
                    write!(f, ", y -> {}", y)?;
                }
                f.write_str(")")
            }
            ValuationSpec::Truncation { ambient, key } => write!(f, "truncation({}, {})", ambient, key),
            ValuationSpec::MonomialBivariate { field, weight_x, weight_y } => {
                write!(f, "monomial({}, {}, {})", field, weight_x, weight_y)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const Q: FieldSpec = FieldSpec::RATIONALS;

    fn qp(c: &[i64]) -> Poly {
        Poly::from_ints(Q, c)
    }

    fn c(n: i64) -> Coeff {
        Coeff::from_integer(n.into())
    }

    #[test]
    fn gauss_value() {
        let v = fixtures::gauss_q();
        assert_eq!(v.value(&qp(&[0, 3, 1])).unwrap(), Value::int(1));
        assert_eq!(v.value(&qp(&[])).unwrap(), Value::Infinity);
        assert_eq!(v.value(&qp(&[5])).unwrap(), Value::zero());
    }

    #[test]
    fn p_adic_value() {
        let v = ValuationSpec::p_adic(2).unwrap();
        assert_eq!(v.value(&qp(&[12])).unwrap(), Value::int(2));
        assert_eq!(v.value_of_constant(&Coeff::new(3.into(), 8.into())), Value::int(-3));
        assert!(v.value(&qp(&[0, 1])).is_err());
        assert!(ValuationSpec::p_adic(4).is_err());
    }

    #[test]
    fn squares_embedding_values() {
        let v = fixtures::squares_embedding(17);
        let x = BivarPoly::x(Q);
        let y = BivarPoly::y(Q);
        assert_eq!(v.value(&x).unwrap(), Value::int(1));
        assert_eq!(v.value(&y).unwrap(), Value::int(1));
        assert_eq!(v.value(&(&y - &x)).unwrap(), Value::int(4));
        let r = v.value_of(&(&(&y - &x) - &x.pow(4))).unwrap();
        assert_eq!(r, ValReport { value: Value::int(9), exact: true });
    }

    #[test]
    fn embedding_retries_at_larger_bounds() {
        let v = fixtures::squares_embedding(17);
        let x = BivarPoly::x(Q);
        let y = BivarPoly::y(Q);
        // y - x - x^4 - x^9 - x^16 = t^25 + ..., invisible below 17
        let f = [1, 4, 9, 16].iter().fold(y.clone(), |acc, &k| &acc - &x.pow(k));
        let r = v.value_of(&f).unwrap();
        assert_eq!(r.value, Value::int(25));
        assert!(!r.exact);
    }

    #[test]
    fn embedding_gives_up_at_the_cap() {
        let ValuationSpec::Embedding(e) = fixtures::squares_embedding(17) else { unreachable!() };
        let v = ValuationSpec::embedding(e.with_max_precision(20));
        let x = BivarPoly::x(Q);
        let f = [1, 4, 9, 16].iter().fold(BivarPoly::y(Q), |acc, &k| &acc - &x.pow(k));
        assert!(matches!(v.value(&f), Err(Error::PrecisionExhausted { .. })));
    }

    #[test]
    fn truncation_examples() {
        let g = fixtures::gauss_q();
        assert_eq!(g.nu_q(&qp(&[0, 1]), &qp(&[1, 3, 1])).unwrap(), Value::zero());

        let shifted = fixtures::shifted_embedding();
        let f = qp(&[1, -2, 1]);
        assert_eq!(shifted.nu_q(&qp(&[-1, 1]), &f).unwrap(), Value::int(2));
        let f = qp(&[-1, 1]);
        assert_eq!(shifted.nu_q(&qp(&[0, 1]), &f).unwrap(), Value::zero());
        assert_eq!(shifted.value(&f).unwrap(), Value::int(1));
    }

    #[test]
    fn truncation_rejects_bad_keys() {
        assert!(ValuationSpec::truncation(fixtures::gauss_q(), qp(&[1, 2])).is_err());
        assert!(ValuationSpec::truncation(fixtures::gauss_q(), qp(&[1])).is_err());
        assert!(ValuationSpec::truncation(fixtures::squares_embedding(17), qp(&[0, 1])).is_err());
    }

    #[test]
    fn centeredness() {
        assert!(fixtures::squares_embedding(17).is_centered());
        assert!(fixtures::shifted_embedding().is_centered());
        assert!(!fixtures::padic_gauss().is_centered());
        assert!(fixtures::gauss_q().is_centered());
        let negative = ValuationSpec::gauss(ValuationSpec::trivial(Q), c(-1)).unwrap();
        assert!(!negative.is_centered());
    }

    #[test]
    fn initial_ratio_examples() {
        let v = fixtures::squares_embedding(17);
        let z = v.initial_ratio(&BivarPoly::y(Q), &BivarPoly::x(Q)).unwrap();
        assert_eq!(z, Some(c(1)));

        let g = fixtures::gauss_q();
        assert_eq!(g.initial_ratio(&qp(&[0, 3]), &qp(&[0, 1])).unwrap(), Some(c(3)));
        assert_eq!(g.initial_ratio(&qp(&[0, 1]), &qp(&[0, 1, 1])).unwrap(), Some(c(1)));
        assert!(matches!(
            g.initial_ratio(&qp(&[0, 1]), &qp(&[1])),
            Err(Error::UnequalValues { .. })
        ));

        // trivial valuation on K[x]: x and x + 1 share value 0 but no constant links them
        let flat = ValuationSpec::gauss(ValuationSpec::trivial(Q), c(0)).unwrap();
        assert_eq!(flat.initial_ratio(&qp(&[0, 1]), &qp(&[1, 1])).unwrap(), None);
    }

    #[test]
    fn initial_ratio_through_truncation() {
        let t = ValuationSpec::truncation(fixtures::shifted_embedding(), qp(&[-1, 1])).unwrap();
        // 2x^2 - 3x + 1 = 2(x-1)^2 + (x-1), initial part (x-1)
        let f = qp(&[1, -3, 2]);
        let g = qp(&[-3, 3]);
        assert_eq!(t.value(&f).unwrap(), Value::int(1));
        assert_eq!(t.initial_ratio(&f, &g).unwrap(), Some(Coeff::new(1.into(), 3.into())));
        assert!(t.initial_ratio(&f, &qp(&[-1, 1, 0, 1])).is_err());
    }

    #[test]
    fn initial_ratio_needs_trivial_base() {
        let v = fixtures::padic_gauss();
        assert!(matches!(v.initial_ratio(&qp(&[2]), &qp(&[6])), Err(Error::Unsupported(_))));
    }
}
