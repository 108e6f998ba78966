//! Hasse derivatives, the level invariant ε and the key-polynomial test.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::binomial;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::poly::Poly;
use crate::valuation::ValuationSpec;
use crate::value::Value;

/// `∂_k(Σ a_j x^j) = Σ C(j, k) a_j x^{j-k}`, valid in every characteristic.
pub fn hasse_derivative(f: &Poly, k: usize) -> Result<Poly> {
    if k == 0 {
        return Err(Error::InvalidDerivativeOrder);
    }
    let field = f.field();
    if f.coeffs().len() <= k {
        return Ok(Poly::zero(field));
    }
    let coeffs = f.coeffs()[k..]
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let c = binomial(BigInt::from(i + k), BigInt::from(k));
            field.mul(&field.from_int(c), a)
        })
        .collect();
    Poly::new(field, coeffs)
}

/// ε(f) and the set `I(f)` of orders attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonReport {
    /// `-inf` for nonzero constants.
    pub epsilon: Value,
    pub indices: Vec<usize>,
}

/// `ε(f) = max_k (ν(f) − ν(∂_k f)) / k` over the `k ≤ deg f` with `∂_k f ≠ 0`.
pub fn epsilon(spec: &ValuationSpec, f: &Poly) -> Result<EpsilonReport> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    let nu_f = spec.value(f)?;
    let nu_f = nu_f
        .finite()
        .cloned()
        .ok_or_else(|| Error::Precondition(alloc::format!("nu({}) is not finite", f)))?;
    let mut best = Value::NegInfinity;
    let mut indices = Vec::new();
    for k in 1..=deg {
        let d = hasse_derivative(f, k)?;
        if d.is_zero() {
            continue;
        }
        let Value::Finite(nu_d) = spec.value(&d)? else {
            return Err(Error::Precondition(alloc::format!("nu({}) is not finite", d)));
        };
        let candidate = Value::Finite((&nu_f - nu_d) / Coeff::from_integer(BigInt::from(k)));
        if candidate > best {
            best = candidate;
            indices.clear();
            indices.push(k);
        } else if candidate == best {
            indices.push(k);
        }
    }
    Ok(EpsilonReport { epsilon: best, indices })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyVerdict {
    pub is_key: bool,
    /// The first monic `f` with `deg f < deg Q` and `ε(f) ≥ ε(Q)`.
    pub witness: Option<Poly>,
    pub epsilon: Value,
}

/// Decides whether a monic `Q` over `F_p` is a key polynomial by checking
/// every monic `f` of degree `1..deg Q` (scaling does not change ε).
pub fn is_key(spec: &ValuationSpec, q: &Poly) -> Result<KeyVerdict> {
    let field = q.field();
    if !field.is_finite() {
        return Err(Error::NonFiniteField);
    }
    if !q.is_monic() || q.degree() == Some(0) {
        return Err(Error::Precondition(alloc::format!("{} is not monic of degree >= 1", q)));
    }
    let eps_q = epsilon(spec, q)?.epsilon;
    let deg = q.degree().expect("nonzero");
    for d in 1..deg {
        for f in Poly::monic_of_degree(field, d)? {
            if epsilon(spec, &f)?.epsilon >= eps_q {
                return Ok(KeyVerdict { is_key: false, witness: Some(f), epsilon: eps_q });
            }
        }
    }
    Ok(KeyVerdict { is_key: true, witness: None, epsilon: eps_q })
}

/// Declared values `μ(x − a)` for the roots of a polynomial, used to check
/// `ε(f) = δ(f)` on hand-built cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootFixture {
    roots: Vec<(String, Value)>,
}

impl RootFixture {
    /// One entry per root counted with multiplicity.
    pub fn new(f: &Poly, roots: Vec<(String, Value)>) -> Result<Self> {
        let degree = f.degree().ok_or(Error::ZeroPolynomial)?;
        if roots.len() != degree {
            return Err(Error::FixtureLength { given: roots.len(), degree });
        }
        Ok(RootFixture { roots })
    }

    pub fn roots(&self) -> &[(String, Value)] {
        &self.roots
    }
}

/// `δ(f) = max μ(x − a)` over the declared roots.
pub fn delta_from_fixture(fixture: &RootFixture) -> Result<Value> {
    fixture.roots.iter().map(|(_, v)| v.clone()).max().ok_or(Error::EmptyFixture)
}
