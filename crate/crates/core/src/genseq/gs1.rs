use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::bivar::BivarPoly;
use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::keypoly::epsilon;
use crate::poly::Poly;
use crate::valuation::ValuationSpec;
use crate::value::Value;

use super::{CheckReport, Corpus, MonomialExpr, Property, Witness};

fn require_monic(qset: &[Poly]) -> Result<()> {
    match qset.iter().find(|q| !q.is_monic() || q.is_constant()) {
        Some(q) => Err(Error::Precondition(format!("{} is not monic of degree >= 1", q))),
        None => Ok(()),
    }
}

/// The members `Q` of the Qset with `deg Q ≤ deg f` and `ν_Q(f) = ν(f)`.
fn eligible<'a>(spec: &ValuationSpec, qset: &'a [Poly], f: &Poly, nu_f: &Value) -> Result<Vec<(usize, &'a Poly)>> {
    let deg = f.degree().unwrap_or(0);
    let mut out = Vec::new();
    for (i, q) in qset.iter().enumerate() {
        if q.degree().is_some_and(|d| d <= deg) && &spec.nu_q(q, f)? == nu_f {
            out.push((i, q));
        }
    }
    Ok(out)
}

/// Checks that every corpus member `f` has some `Q` with `deg Q ≤ deg f`
/// and `ν_Q(f) = ν(f)`. Nonzero constants count as complete.
pub fn completeness_check(spec: &ValuationSpec, qset: &[Poly], corpus: &Corpus) -> Result<CheckReport> {
    require_monic(qset)?;
    let members = corpus.univariate_members()?;
    let scope = corpus.describe();
    for (n, f) in members.iter().enumerate() {
        if f.is_constant() {
            continue;
        }
        let nu_f = spec.value(f)?;
        if eligible(spec, qset, f, &nu_f)?.is_empty() {
            let w = BivarPoly::from(f);
            let reason = format!("no Q with deg(Q) <= {} and nu_Q(f) = nu(f) = {}", f.degree().unwrap_or(0), nu_f);
            return Ok(CheckReport::fail(Property::Completeness, scope, n + 1, Witness { member: w.clone(), element: w, reason }));
        }
    }
    Ok(CheckReport::pass(Property::Completeness, scope, members.len()))
}

/// `f = Σ a_i Q^{λ_i}` with field coefficients `a_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gs1StarCert {
    pub terms: Vec<(Coeff, MonomialExpr)>,
}

impl Gs1StarCert {
    pub fn reconstruct(&self, qset: &[Poly]) -> Option<Poly> {
        let field = qset.first()?.field();
        self.terms
            .iter()
            .try_fold(Poly::zero(field), |acc, (a, m)| Some(&acc + &m.evaluate(qset)?.scale(a)))
    }

    pub fn render(&self, qset: &[Poly]) -> alloc::string::String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<_> = self.terms.iter().map(|(a, m)| format!("{} * {}", a, m.render(qset))).collect();
        parts.join(" + ")
    }
}

/// Which clause of the certificate fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertViolation {
    Reconstruction,
    /// `ν(a_i Q^{λ_i}) < ν(f)` for term `i`.
    ValueBound(usize),
    /// Term `i` uses a `Q` of degree above `deg f`, or an index outside the Qset.
    DegreeBound(usize),
}

impl fmt::Display for CertViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertViolation::Reconstruction => f.write_str("terms do not sum to f"),
            CertViolation::ValueBound(i) => write!(f, "term {} has value below nu(f)", i),
            CertViolation::DegreeBound(i) => write!(f, "term {} uses Q with deg(Q) > deg(f)", i),
        }
    }
}

/// Builds a GS1* certificate by expanding in an eligible `Q` and recursing
/// on the expansion coefficients, whose degrees are strictly smaller.
///
/// Among eligible `Q` the smallest degree wins, then the smallest `ε`, then
/// the lexicographically smallest coefficient vector.
pub fn gs1star_decompose(spec: &ValuationSpec, qset: &[Poly], f: &Poly) -> Result<Gs1StarCert> {
    require_monic(qset)?;
    let cert = decompose(spec, qset, f)?;
    if let Err(v) = gs1star_verify(spec, qset, f, &cert)? {
        return Err(Error::Precondition(format!("certificate for {} fails: {}", f, v)));
    }
    Ok(cert)
}

fn decompose(spec: &ValuationSpec, qset: &[Poly], f: &Poly) -> Result<Gs1StarCert> {
    if f.is_zero() {
        return Ok(Gs1StarCert { terms: Vec::new() });
    }
    if f.is_constant() {
        return Ok(Gs1StarCert { terms: alloc::vec![(f.coeff(0), MonomialExpr::one())] });
    }
    let nu_f = spec.value(f)?;
    let mut best: Option<(usize, Value, usize, &Poly)> = None;
    for (i, q) in eligible(spec, qset, f, &nu_f)? {
        let key = (q.degree().unwrap_or(0), epsilon(spec, q)?.epsilon);
        let better = match &best {
            None => true,
            Some((d, e, _, b)) => (key.0, &key.1).cmp(&(*d, e)).then_with(|| q.coeffs().cmp(b.coeffs())).is_lt(),
        };
        if better {
            best = Some((key.0, key.1, i, q));
        }
    }
    let Some((_, _, index, q)) = best else {
        return Err(Error::NoEligibleQ(f.clone()));
    };
    let expansion = f.expand(q)?;
    let mut terms = Vec::new();
    for (power, part) in expansion.parts().iter().rev() {
        for (a, mut m) in decompose(spec, qset, part)?.terms {
            m.multiply(index, *power as u32);
            terms.push((a, m));
        }
    }
    Ok(Gs1StarCert { terms })
}

/// Rechecks reconstruction, the value bound and the degree bound.
pub fn gs1star_verify(
    spec: &ValuationSpec,
    qset: &[Poly],
    f: &Poly,
    cert: &Gs1StarCert,
) -> Result<core::result::Result<(), CertViolation>> {
    let deg_f = f.degree().unwrap_or(0);
    for (i, (_, m)) in cert.terms.iter().enumerate() {
        let ok = m.exponents().keys().all(|k| qset.get(*k).and_then(Poly::degree).is_some_and(|d| d <= deg_f));
        if !ok {
            return Ok(Err(CertViolation::DegreeBound(i)));
        }
    }
    let total = match cert.reconstruct(qset) {
        Some(p) => p,
        None if cert.terms.is_empty() => Poly::zero(f.field()),
        None => return Ok(Err(CertViolation::DegreeBound(0))),
    };
    if &total != f {
        return Ok(Err(CertViolation::Reconstruction));
    }
    let nu_f = spec.value(f)?;
    for (i, (a, m)) in cert.terms.iter().enumerate() {
        let term = m.evaluate(qset).expect("indices checked").scale(a);
        if spec.value(&term)? < nu_f {
            return Ok(Err(CertViolation::ValueBound(i)));
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::fixtures;
    use alloc::vec;
    use num_traits::One;

    fn qp(c: &[i64]) -> Poly {
        Poly::from_ints(FieldSpec::RATIONALS, c)
    }

    fn int(n: i64) -> Coeff {
        Coeff::from_integer(n.into())
    }

    #[test]
    fn completeness_examples() {
        let e = fixtures::shifted_embedding();
        let corpus = Corpus::exhaustive(FieldSpec::RATIONALS, 2, 1);
        let r = completeness_check(&e, &[qp(&[0, 1])], &corpus).unwrap();
        assert!(!r.passed());
        assert_eq!(r.witness.unwrap().element, BivarPoly::from(&qp(&[-1, 1])));
        assert!(completeness_check(&e, &[qp(&[-1, 1])], &corpus).unwrap().passed());
        let g = fixtures::gauss_q();
        assert!(completeness_check(&g, &[qp(&[0, 1])], &Corpus::exhaustive(FieldSpec::RATIONALS, 3, 1)).unwrap().passed());
    }

    #[test]
    fn completeness_requires_monic() {
        let corpus = Corpus::exhaustive(FieldSpec::RATIONALS, 1, 1);
        assert!(completeness_check(&fixtures::gauss_q(), &[qp(&[0, 2])], &corpus).is_err());
    }

    #[test]
    fn decompose_examples() {
        let e = fixtures::shifted_embedding();
        let qset = [qp(&[-1, 1])];
        let c = gs1star_decompose(&e, &qset, &qp(&[1, -2, 1])).unwrap();
        assert_eq!(c.terms, vec![(Coeff::one(), MonomialExpr::single(0, 2))]);
        let c = gs1star_decompose(&e, &qset, &qp(&[0, 1])).unwrap();
        assert_eq!(c.terms, vec![(Coeff::one(), MonomialExpr::single(0, 1)), (Coeff::one(), MonomialExpr::one())]);
        assert_eq!(c.render(&qset), "1 * (x - 1) + 1 * 1");

        let g = fixtures::gauss_q();
        let c = gs1star_decompose(&g, &[qp(&[0, 1])], &qp(&[1, 3, 1])).unwrap();
        assert_eq!(
            c.terms,
            vec![
                (Coeff::one(), MonomialExpr::single(0, 2)),
                (int(3), MonomialExpr::single(0, 1)),
                (Coeff::one(), MonomialExpr::one()),
            ]
        );
    }

    #[test]
    fn decompose_reports_missing_q() {
        let e = fixtures::shifted_embedding();
        assert_eq!(gs1star_decompose(&e, &[qp(&[0, 1])], &qp(&[-1, 1])), Err(Error::NoEligibleQ(qp(&[-1, 1]))));
    }

    #[test]
    fn decompose_prefers_low_degree() {
        let g = fixtures::gauss_q();
        let qset = [qp(&[0, 0, 1]), qp(&[0, 1])];
        let c = gs1star_decompose(&g, &qset, &qp(&[0, 1, 1])).unwrap();
        assert!(c.terms.iter().all(|(_, m)| !m.exponents().contains_key(&0)));
    }

    #[test]
    fn verify_detects_tampering() {
        let e = fixtures::shifted_embedding();
        let qset = [qp(&[-1, 1])];
        let f = qp(&[0, 1]);
        let mut c = gs1star_decompose(&e, &qset, &f).unwrap();
        assert_eq!(gs1star_verify(&e, &qset, &f, &c).unwrap(), Ok(()));
        c.terms.pop();
        assert_eq!(gs1star_verify(&e, &qset, &f, &c).unwrap(), Err(CertViolation::Reconstruction));

        let big = [qp(&[-1, 1]), qp(&[0, 0, 1])];
        let c = Gs1StarCert { terms: vec![(Coeff::one(), MonomialExpr::single(1, 1))] };
        assert_eq!(gs1star_verify(&e, &big, &f, &c).unwrap(), Err(CertViolation::DegreeBound(0)));

        // x - 1 split as x + (-1): ν(x) = 0 < ν(x - 1) = 1
        let g = fixtures::shifted_embedding();
        let qs = [qp(&[0, 1])];
        let c = Gs1StarCert { terms: vec![(Coeff::one(), MonomialExpr::single(0, 1)), (int(-1), MonomialExpr::one())] };
        assert_eq!(gs1star_verify(&g, &qs, &qp(&[-1, 1]), &c).unwrap(), Err(CertViolation::ValueBound(0)));
    }

    #[test]
    fn zero_and_constants() {
        let g = fixtures::gauss_q();
        let qset = [qp(&[0, 1])];
        assert!(gs1star_decompose(&g, &qset, &qp(&[])).unwrap().terms.is_empty());
        assert_eq!(gs1star_decompose(&g, &qset, &qp(&[7])).unwrap().terms, vec![(int(7), MonomialExpr::one())]);
    }
}
