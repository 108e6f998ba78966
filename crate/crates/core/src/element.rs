//! Common interface over univariate and bivariate polynomials, so that the
//! graded-ring calculus and the generating-sequence checkers are written once.

use core::fmt;

use crate::bivar::BivarPoly;
use crate::field::{Coeff, FieldSpec};
use crate::poly::Poly;

pub trait Element: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn field(&self) -> FieldSpec;
    fn is_zero(&self) -> bool;
    fn unit(field: FieldSpec) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Coeff) -> Self;
    fn power(&self, n: u32) -> Self;
    fn to_bivariate(&self) -> BivarPoly;
    fn to_univariate(&self) -> Option<Poly>;
    /// Total degree; `None` for zero.
    fn degree(&self) -> Option<u32>;
}

impl Element for Poly {
    fn field(&self) -> FieldSpec {
        Poly::field(self)
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn unit(field: FieldSpec) -> Self {
        Poly::one(field)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &Coeff) -> Self {
        self.scale(c)
    }
    fn power(&self, n: u32) -> Self {
        self.pow(n)
    }
    fn to_bivariate(&self) -> BivarPoly {
        BivarPoly::from(self)
    }
    fn to_univariate(&self) -> Option<Poly> {
        Some(self.clone())
    }
    fn degree(&self) -> Option<u32> {
        Poly::degree(self).map(|d| d as u32)
    }
}

impl Element for BivarPoly {
    fn field(&self) -> FieldSpec {
        BivarPoly::field(self)
    }
    fn is_zero(&self) -> bool {
        BivarPoly::is_zero(self)
    }
    fn unit(field: FieldSpec) -> Self {
        BivarPoly::one(field)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &Coeff) -> Self {
        self.scale(c)
    }
    fn power(&self, n: u32) -> Self {
        self.pow(n)
    }
    fn to_bivariate(&self) -> BivarPoly {
        self.clone()
    }
    fn to_univariate(&self) -> Option<Poly> {
        BivarPoly::to_univariate(self)
    }
    fn degree(&self) -> Option<u32> {
        self.total_degree()
    }
}
