//! Sparse polynomials in `x` and `y`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::field::{Coeff, FieldSpec};
use crate::poly::{power_name, write_terms, Poly};

/// `Σ c_ij x^i y^j`, keyed by `(i, j)`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    field: FieldSpec,
    terms: BTreeMap<(u32, u32), Coeff>,
}

impl BivarPoly {
    pub fn zero(field: FieldSpec) -> Self {
        BivarPoly { field, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        BivarPoly::monomial(field, Coeff::one(), 0, 0)
    }

    pub fn x(field: FieldSpec) -> Self {
        BivarPoly::monomial(field, Coeff::one(), 1, 0)
    }

    pub fn y(field: FieldSpec) -> Self {
        BivarPoly::monomial(field, Coeff::one(), 0, 1)
    }

    pub fn monomial(field: FieldSpec, c: Coeff, i: u32, j: u32) -> Self {
        let c = field.reduce(&c).expect("coefficient not representable in field");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BivarPoly { field, terms }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Coeff {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn y_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(_, j)| *j).max()
    }

    /// The exponent pair when this is a single term `c·x^i y^j`.
    pub fn as_monomial(&self) -> Option<(u32, u32)> {
        if self.terms.len() == 1 {
            self.terms.keys().next().copied()
        } else {
            None
        }
    }

    /// `None` when some term involves `y`.
    pub fn to_univariate(&self) -> Option<Poly> {
        if self.y_degree().unwrap_or(0) > 0 {
            return None;
        }
        let deg = self.terms.keys().map(|(i, _)| *i as usize).max();
        let mut coeffs = alloc::vec![Coeff::zero(); deg.map_or(0, |d| d + 1)];
        for ((i, _), c) in &self.terms {
            coeffs[*i as usize] = c.clone();
        }
        Some(Poly::from_reduced(self.field, coeffs))
    }

    pub fn scale(&self, c: &Coeff) -> BivarPoly {
        let c = self.field.reduce(c).expect("scalar not representable in field");
        let mut out = BivarPoly::zero(self.field);
        for (k, a) in &self.terms {
            out.add_term(*k, self.field.mul(a, &c));
        }
        out
    }

    pub fn pow(&self, mut n: u32) -> BivarPoly {
        let mut base = self.clone();
        let mut acc = BivarPoly::one(self.field);
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

    fn add_term(&mut self, key: (u32, u32), c: Coeff) {
        if c.is_zero() {
            return;
        }
        let field = self.field;
        let sum = match self.terms.get(&key) {
            Some(old) => field.add(old, &c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    /// Terms in printing order: total degree descending, then `x`-degree descending.
    pub fn sorted_terms(&self) -> Vec<((u32, u32), &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c)).collect();
        v.sort_by(|((a, b), _), ((c, d), _)| (c + d, c).cmp(&(a + b, a)));
        v
    }
}

impl From<&Poly> for BivarPoly {
    fn from(p: &Poly) -> Self {
        let mut out = BivarPoly::zero(p.field());
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term((i as u32, 0), c.clone());
        }
        out
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;

    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        assert_eq!(self.field, rhs.field, "polynomials over different fields");
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;

    fn neg(self) -> BivarPoly {
        let mut out = BivarPoly::zero(self.field);
        for (k, c) in &self.terms {
            out.add_term(*k, self.field.neg(c));
        }
        out
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;

    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        self + &(-rhs)
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;

    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        assert_eq!(self.field, rhs.field, "polynomials over different fields");
        let mut out = BivarPoly::zero(self.field);
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &rhs.terms {
                out.add_term((i + k, j + l), self.field.mul(a, b));
            }
        }
        out
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms().into_iter().map(|((i, j), c)| {
            let xs = power_name("x", i);
            let ys = power_name("y", j);
            let mono = match (xs.is_empty(), ys.is_empty()) {
                (_, true) => xs,
                (true, false) => ys,
                (false, false) => alloc::format!("{}*{}", xs, ys),
            };
            (c, mono)
        });
        write_terms(f, self.field, terms)
    }
}
