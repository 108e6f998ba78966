use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bivar::BivarPoly;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::graded::gs3_combination;
use crate::poly::Poly;
use crate::valuation::ValuationSpec;
use crate::value::Value;

use super::{CheckReport, Corpus, Property, Witness};

fn values_of(spec: &ValuationSpec, qset: &[BivarPoly]) -> Result<Vec<Value>> {
    qset.iter()
        .map(|q| if q.is_zero() { Err(Error::ZeroPolynomial) } else { spec.value(q) })
        .collect()
}

/// Minimal exponent vectors `λ` with `Σ λ_i ν_i ≥ γ`, over the Qset members
/// of positive value (a zero-valued factor never makes a generator minimal).
fn minimal_eligible(values: &[Value], gamma: &Coeff) -> Vec<Vec<u32>> {
    if !gamma.is_positive() {
        return alloc::vec![alloc::vec![0; values.len()]];
    }
    let positive: Vec<Option<Coeff>> = values
        .iter()
        .map(|v| v.finite().filter(|r| !r.is_zero()).cloned())
        .collect();
    let mut out = Vec::new();
    let mut current = alloc::vec![0u32; values.len()];
    search(&positive, gamma, 0, &Coeff::zero(), &mut current, &mut out);
    out
}

fn search(values: &[Option<Coeff>], gamma: &Coeff, i: usize, acc: &Coeff, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if acc >= gamma {
        let minimal = current
            .iter()
            .zip(values)
            .all(|(n, v)| *n == 0 || &(acc - v.as_ref().expect("used factors are positive")) < gamma);
        if minimal {
            out.push(current.clone());
        }
        return;
    }
    if i == values.len() {
        return;
    }
    search(values, gamma, i + 1, acc, current, out);
    if let Some(v) = &values[i] {
        let mut total = acc.clone();
        let mut n = 0;
        while &total < gamma {
            n += 1;
            total += v;
            current[i] = n;
            search(values, gamma, i + 1, &total, current, out);
        }
        current[i] = 0;
    }
}

enum Ideal {
    Univariate(Poly),
    Monomial(Vec<(u32, u32)>),
    Zero,
}

impl Ideal {
    fn contains(&self, f: &BivarPoly) -> bool {
        match self {
            Ideal::Zero => f.is_zero(),
            Ideal::Univariate(g) => f.to_univariate().is_some_and(|p| g.divides(&p)),
            Ideal::Monomial(gens) => {
                f.terms().all(|((i, j), _)| gens.iter().any(|(a, b)| a <= i && b <= j))
            }
        }
    }

    fn describe(&self) -> String {
        match self {
            Ideal::Zero => "(0)".into(),
            Ideal::Univariate(g) => format!("({})", g),
            Ideal::Monomial(gens) => {
                let field = crate::field::FieldSpec::RATIONALS;
                let parts: Vec<String> =
                    gens.iter().map(|(i, j)| format!("{}", BivarPoly::monomial(field, Coeff::one(), *i, *j))).collect();
                format!("({})", parts.join(", "))
            }
        }
    }
}

fn build_ideal(spec: &ValuationSpec, qset: &[BivarPoly], lambdas: &[Vec<u32>]) -> Result<Ideal> {
    let field = spec.field();
    if lambdas.is_empty() {
        return Ok(Ideal::Zero);
    }
    if spec.is_bivariate() {
        let mut shapes = Vec::with_capacity(qset.len());
        for q in qset {
            match q.as_monomial() {
                Some(s) => shapes.push(s),
                None => return Err(Error::Unsupported(format!("GS2 over K[x, y] needs monomial Qset members, got {}", q))),
            }
        }
        let mut gens: Vec<(u32, u32)> = lambdas
            .iter()
            .map(|l| {
                l.iter().zip(&shapes).fold((0, 0), |(a, b), (n, (i, j))| (a + n * i, b + n * j))
            })
            .collect();
        gens.sort();
        gens.dedup();
        return Ok(Ideal::Monomial(gens));
    }
    let polys: Vec<Poly> = qset
        .iter()
        .map(|q| q.to_univariate().ok_or_else(|| Error::Unsupported(format!("{} involves y", q))))
        .collect::<Result<_>>()?;
    let mut g = Poly::zero(field);
    for l in lambdas {
        let m = crate::graded::monomial(&polys, &l.iter().map(|n| u64::from(*n)).collect::<Vec<_>>())
            .unwrap_or_else(|| Poly::one(field));
        g = g.gcd(&m);
    }
    Ok(Ideal::Univariate(g))
}

/// Checks that every corpus member with `ν(f) ≥ γ` lies in the ideal
/// generated by the monomials `Q^λ` with `ν(Q^λ) ≥ γ`.
///
/// The ideal is built from the exact finite set of minimal such monomials.
/// On `K[x]` membership is divisibility by their gcd; on `K[x, y]` the Qset
/// must consist of monomials and membership is checked term by term.
pub fn gs2_check(spec: &ValuationSpec, qset: &[BivarPoly], gamma: &Value, corpus: &Corpus) -> Result<CheckReport> {
    if !spec.is_centered() {
        return Err(Error::NotCentered);
    }
    let values = values_of(spec, qset)?;
    let members = corpus.members()?;
    let scope = format!("{}; gamma = {}", corpus.describe(), gamma);
    let gamma_q = match gamma {
        Value::Finite(g) => g.clone(),
        Value::NegInfinity => return Ok(CheckReport::pass(Property::Gs2, scope, members.len())),
        Value::Infinity => return Err(Error::Precondition("gamma must be finite".into())),
    };
    let lambdas = minimal_eligible(&values, &gamma_q);
    let ideal = build_ideal(spec, qset, &lambdas)?;
    for (n, f) in members.iter().enumerate() {
        if &spec.value(f)? < gamma {
            continue;
        }
        if !ideal.contains(f) {
            let reason = format!("value >= {} but not in the ideal {}", gamma, ideal.describe());
            let w = Witness { member: f.clone(), element: f.clone(), reason };
            return Ok(CheckReport::fail(Property::Gs2, scope, n + 1, w));
        }
    }
    Ok(CheckReport::pass(Property::Gs2, scope, members.len()))
}

/// `max_degree · max(max ν(Q), 1) + 10`.
pub fn default_value_cap(spec: &ValuationSpec, qset: &[BivarPoly], corpus: &Corpus) -> Result<Value> {
    let values = values_of(spec, qset)?;
    let top = values
        .iter()
        .filter_map(|v| v.finite().cloned())
        .fold(Coeff::one(), |acc, v| if v > acc { v } else { acc });
    Ok(Value::Finite(top * Coeff::from_integer(BigInt::from(corpus.max_degree())) + Coeff::from_integer(10.into())))
}

/// Peels initial forms off every corpus member until its value passes the
/// cap: `f ← f − Σ z_λ·Q^λ`, each step strictly raising `ν`.
pub fn gs3_check(spec: &ValuationSpec, qset: &[BivarPoly], corpus: &Corpus, cap: Option<Value>) -> Result<CheckReport> {
    if !spec.is_centered() {
        return Err(Error::NotCentered);
    }
    let cap = match cap {
        Some(c) => c,
        None => default_value_cap(spec, qset, corpus)?,
    };
    let members = corpus.members()?;
    let scope = format!("{}; value cap {}", corpus.describe(), cap);
    for (n, f) in members.iter().enumerate() {
        let mut tail = f.clone();
        loop {
            if tail.is_zero() {
                break;
            }
            let v = spec.value(&tail)?;
            if v > cap {
                break;
            }
            match gs3_combination(spec, qset, &tail)? {
                Ok(terms) => {
                    let next = terms.iter().fold(tail.clone(), |acc, w| acc.minus(&w.term()));
                    debug_assert!(spec.value(&next)? > v);
                    tail = next;
                }
                Err(reason) => {
                    let w = Witness { member: f.clone(), element: tail, reason: format!("{}", reason) };
                    return Ok(CheckReport::fail(Property::Gs3, scope, n + 1, w));
                }
            }
        }
    }
    Ok(CheckReport::pass(Property::Gs3, scope, members.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::fixtures;
    use crate::genseq::CorpusSource;
    use alloc::vec;

    fn qx() -> BivarPoly {
        BivarPoly::x(FieldSpec::RATIONALS)
    }

    #[test]
    fn minimal_generators() {
        let got = minimal_eligible(&[Value::int(2), Value::int(3)], &Coeff::from_integer(5.into()));
        assert_eq!(got, vec![vec![0, 2], vec![1, 1], vec![3, 0]]);
        let got = minimal_eligible(&[Value::zero(), Value::int(1)], &Coeff::one());
        assert_eq!(got, vec![vec![0, 1]]);
        assert_eq!(minimal_eligible(&[Value::int(1)], &Coeff::zero()), vec![vec![0]]);
        assert!(minimal_eligible(&[Value::zero()], &Coeff::one()).is_empty());
    }

    #[test]
    fn gs2_fails_on_the_squares_example() {
        let s = fixtures::squares_embedding(17);
        let corpus = Corpus::new(FieldSpec::RATIONALS, 2, true).with(CorpusSource::Monomials);
        let r = gs2_check(&s, &[qx()], &Value::int(1), &corpus).unwrap();
        assert!(!r.passed());
        assert_eq!(r.witness.unwrap().element, BivarPoly::y(FieldSpec::RATIONALS));
    }

    #[test]
    fn gs2_passes_for_gauss_over_f3() {
        let f3 = FieldSpec::prime(3).unwrap();
        let corpus = Corpus::exhaustive(f3, 3, 0);
        let r = gs2_check(&fixtures::gauss_f3(), &[BivarPoly::x(f3)], &Value::int(1), &corpus).unwrap();
        assert!(r.passed(), "{}", r);
        assert_eq!(r.checked, 2 * (1 + 3 + 9 + 27));
    }

    #[test]
    fn gs2_at_gamma_zero_is_trivial() {
        let e = fixtures::shifted_embedding();
        let corpus = Corpus::exhaustive(FieldSpec::RATIONALS, 2, 1);
        assert!(gs2_check(&e, &[qx()], &Value::zero(), &corpus).unwrap().passed());
        let s = fixtures::squares_embedding(17);
        let bi = Corpus::new(FieldSpec::RATIONALS, 2, true).with(CorpusSource::Monomials);
        assert!(gs2_check(&s, &[qx()], &Value::zero(), &bi).unwrap().passed());
    }

    #[test]
    fn gs2_rejects_unsupported_and_non_centered() {
        let s = fixtures::squares_embedding(17);
        let q = FieldSpec::RATIONALS;
        let bi = Corpus::new(q, 2, true).with(CorpusSource::Monomials);
        let non_monomial = &BivarPoly::y(q) - &qx();
        assert!(matches!(gs2_check(&s, &[non_monomial], &Value::int(1), &bi), Err(Error::Unsupported(_))));
        let corpus = Corpus::exhaustive(q, 1, 1);
        assert_eq!(gs2_check(&fixtures::padic_gauss(), &[qx()], &Value::int(1), &corpus), Err(Error::NotCentered));
    }

    #[test]
    fn gs3_examples() {
        let q = FieldSpec::RATIONALS;
        let s = fixtures::squares_embedding(17);
        let bi = Corpus::new(q, 2, true).with(CorpusSource::Monomials);
        assert!(gs3_check(&s, &[qx()], &bi, None).unwrap().passed());

        let e = fixtures::shifted_embedding();
        let r = gs3_check(&e, &[qx()], &Corpus::exhaustive(q, 2, 1), None).unwrap();
        assert!(!r.passed());
        let w = r.witness.unwrap();
        assert_eq!(w.element, BivarPoly::from(&Poly::from_ints(q, &[-1, 1])));
        assert!(w.reason.contains("not in semigroup"));

        let g = fixtures::gauss_q();
        assert!(gs3_check(&g, &[qx()], &Corpus::exhaustive(q, 3, 1), None).unwrap().passed());
    }

    #[test]
    fn default_cap() {
        let s = fixtures::squares_embedding(17);
        let bi = Corpus::new(FieldSpec::RATIONALS, 3, true).with(CorpusSource::Monomials);
        assert_eq!(default_value_cap(&s, &[qx()], &bi).unwrap(), Value::int(13));
    }
}
