//! Initial forms in the graded ring of a valuation, the value-semigroup
//! solver and monomial witnesses for initial forms.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::field::{Coeff, FieldSpec};
use crate::valuation::ValuationSpec;
use crate::value::Value;

/// `in_ν(f)`, kept as a representative together with its grade.
///
/// Two initial forms are compared with [`InitialForm::same_as`], never by
/// representative.
#[derive(Clone, Debug)]
pub struct InitialForm<E> {
    representative: E,
    grade: Value,
}

impl<E: Element> InitialForm<E> {
    pub fn new(spec: &ValuationSpec, f: &E) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(InitialForm { representative: f.clone(), grade: spec.value(f)? })
    }

    pub fn representative(&self) -> &E {
        &self.representative
    }

    pub fn grade(&self) -> &Value {
        &self.grade
    }

    pub fn same_as(&self, spec: &ValuationSpec, other: &InitialForm<E>) -> Result<bool> {
        initial_equal(spec, &self.representative, &other.representative)
    }
}

/// `in_ν(f) = in_ν(g)`: `ν(f) = ν(g)` and `ν(f − g) > ν(f)`.
pub fn initial_equal<E: Element>(spec: &ValuationSpec, f: &E, g: &E) -> Result<bool> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let vf = spec.value(f)?;
    if vf != spec.value(g)? {
        return Ok(false);
    }
    Ok(spec.value(&f.minus(g))? > vf)
}

fn sum<E: Element>(field: crate::field::FieldSpec, parts: &[E]) -> E {
    parts.iter().fold(E::unit(field).minus(&E::unit(field)), |acc, p| acc.plus(p))
}

/// Indices `I` (0-based) with `in_ν(f) = Σ_{i∈I} in_ν(f_i)`.
///
/// Needs `ν(f_i) = ν(f)` for every part and `in_ν(f) = in_ν(Σ f_i)`. The
/// selection splits off the first part and compares it with the rest: if the
/// rest has larger value it drops out, otherwise both contribute and the rest
/// is split again.
pub fn initial_subset_select<E: Element>(spec: &ValuationSpec, f: &E, parts: &[E]) -> Result<Vec<usize>> {
    if parts.is_empty() {
        return Err(Error::Precondition("no parts given".to_string()));
    }
    let vf = spec.value(f)?;
    for p in parts {
        if p.is_zero() || spec.value(p)? != vf {
            return Err(Error::Precondition(format!("part {} does not have value {}", p, vf)));
        }
    }
    let field = f.field();
    if !initial_equal(spec, f, &sum(field, parts))? {
        return Err(Error::Precondition(format!("{} and the sum of the parts have different initial forms", f)));
    }
    let mut selected = Vec::new();
    let mut start = 0;
    while start + 1 < parts.len() {
        selected.push(start);
        let rest = sum(field, &parts[start + 1..]);
        if spec.value(&rest)? > vf {
            break;
        }
        start += 1;
    }
    if start + 1 == parts.len() {
        selected.push(start);
    }
    let chosen: Vec<E> = selected.iter().map(|&i| parts[i].clone()).collect();
    debug_assert!(initial_equal(spec, f, &sum(field, &chosen))?);
    Ok(selected)
}

/// Multiplicities `n_i` with `Σ n_i γ_i` equal to the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupWitness {
    pub multiplicities: Vec<u64>,
}

impl SemigroupWitness {
    pub fn total(&self, generators: &[Value]) -> Value {
        self.multiplicities
            .iter()
            .zip(generators)
            .fold(Value::zero(), |acc, (n, g)| acc + g.times(*n))
    }
}

impl fmt::Display for SemigroupWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, n) in self.multiplicities.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", n)?;
        }
        f.write_str("]")
    }
}

/// Largest integer-scaled target the exact solver accepts.
pub const SEMIGROUP_LIMIT: u64 = 1 << 24;

struct Scaled {
    gens: Vec<u64>,
    target: u64,
}

fn scale(generators: &[Value], target: &Value) -> Result<Scaled> {
    let mut all = Vec::with_capacity(generators.len() + 1);
    for v in generators.iter().chain(core::iter::once(target)) {
        match v {
            Value::Finite(r) if !r.is_negative() => all.push(r.clone()),
            _ => return Err(Error::NegativeInput),
        }
    }
    let lcm = all.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let to_int = |r: &Coeff| (r * Coeff::from_integer(lcm.clone())).to_integer();
    let target_int = to_int(&all[all.len() - 1]);
    let limit = BigInt::from(SEMIGROUP_LIMIT);
    if target_int > limit {
        return Err(Error::SemigroupTooLarge(target.to_string()));
    }
    let target = target_int.to_u64().expect("bounded");
    let gens = all[..all.len() - 1]
        .iter()
        .map(|r| {
            let g = to_int(r);
            // generators above the target can only be used zero times
            if g > BigInt::from(target) { target + 1 } else { g.to_u64().expect("bounded") }
        })
        .collect();
    Ok(Scaled { gens, target })
}

/// `reach[i][v]`: `v` is a sum of generators `i..`.
fn reachability(s: &Scaled) -> Vec<Vec<bool>> {
    let t = s.target as usize;
    let r = s.gens.len();
    let mut reach = vec![vec![false; t + 1]; r + 1];
    reach[r][0] = true;
    for i in (0..r).rev() {
        let g = s.gens[i] as usize;
        for v in 0..=t {
            reach[i][v] = reach[i + 1][v] || (g > 0 && v >= g && reach[i][v - g]);
        }
    }
    reach
}

/// Exact membership of `target` in the semigroup generated by `generators`.
///
/// Returns the lexicographically smallest multiplicity vector. Zero
/// generators always get multiplicity 0.
pub fn semigroup_membership(generators: &[Value], target: &Value) -> Result<Option<SemigroupWitness>> {
    Ok(semigroup_representations(generators, target, 1)?.into_iter().next())
}

/// Up to `limit` representations of `target`, in lexicographic order.
pub fn semigroup_representations(generators: &[Value], target: &Value, limit: usize) -> Result<Vec<SemigroupWitness>> {
    let s = scale(generators, target)?;
    let reach = reachability(&s);
    let mut out = Vec::new();
    let mut current = vec![0u64; s.gens.len()];
    collect(&s, &reach, 0, s.target, &mut current, &mut out, limit);
    Ok(out)
}

fn collect(
    s: &Scaled,
    reach: &[Vec<bool>],
    i: usize,
    remaining: u64,
    current: &mut Vec<u64>,
    out: &mut Vec<SemigroupWitness>,
    limit: usize,
) {
    if out.len() >= limit || !reach[i][remaining as usize] {
        return;
    }
    if i == s.gens.len() {
        out.push(SemigroupWitness { multiplicities: current.clone() });
        return;
    }
    let g = s.gens[i];
    let max = if g == 0 { 0 } else { remaining / g };
    for n in 0..=max {
        current[i] = n;
        collect(s, reach, i + 1, remaining - n * g, current, out, limit);
        if out.len() >= limit {
            break;
        }
    }
    current[i] = 0;
}

/// How many semigroup representations [`gs3_witness`] tries before giving up
/// on the residue condition.
pub const REPRESENTATION_LIMIT: usize = 64;

/// `in_ν(f) = z · Π in_ν(Q_i)^{n_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialWitness<E> {
    pub z: Coeff,
    pub multiplicities: SemigroupWitness,
    /// `Π Q_i^{n_i}`.
    pub monomial: E,
}

impl<E: Element> MonomialWitness<E> {
    /// `z · Π Q_i^{n_i}`.
    pub fn term(&self) -> E {
        self.monomial.scaled(&self.z)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gs3Failure {
    /// `ν(f)` is not in the semigroup spanned by the `ν(Q_i)`.
    NotInSemigroup { value: Value },
    /// The value is reachable but no monomial has the same initial form up to a constant.
    ResidueMismatch { value: Value },
}

impl fmt::Display for Gs3Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gs3Failure::NotInSemigroup { value } => write!(f, "value {} not in semigroup", value),
            Gs3Failure::ResidueMismatch { value } => write!(f, "residue mismatch at value {}", value),
        }
    }
}

pub fn monomial<E: Element>(qset: &[E], multiplicities: &[u64]) -> Option<E> {
    let field = qset.first()?.field();
    Some(qset.iter().zip(multiplicities).fold(E::unit(field), |acc, (q, n)| {
        if *n == 0 { acc } else { acc.times(&q.power(*n as u32)) }
    }))
}

/// Writes `in_ν(f)` as a constant times a monomial in the `in_ν(Q_i)`.
pub fn gs3_witness<E: Element>(
    spec: &ValuationSpec,
    qset: &[E],
    f: &E,
) -> Result<core::result::Result<MonomialWitness<E>, Gs3Failure>> {
    if !spec.is_centered() {
        return Err(Error::NotCentered);
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let value = spec.value(f)?;
    let mut gens = Vec::with_capacity(qset.len());
    for q in qset {
        if q.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        gens.push(spec.value(q)?);
    }
    let field = f.field();
    let candidates = semigroup_representations(&gens, &value, REPRESENTATION_LIMIT)?;
    if candidates.is_empty() {
        return Ok(Err(Gs3Failure::NotInSemigroup { value }));
    }
    for w in candidates {
        let m = monomial(qset, &w.multiplicities).unwrap_or_else(|| E::unit(field));
        if let Some(z) = spec.initial_ratio(f, &m)? {
            return Ok(Ok(MonomialWitness { z, multiplicities: w, monomial: m }));
        }
    }
    Ok(Err(Gs3Failure::ResidueMismatch { value }))
}

/// `in_ν(f)` as a `k`-linear combination of monomials in the `in_ν(Q_i)`.
///
/// A single monomial is tried first; otherwise the coefficients are solved for
/// over every representation of `ν(f)` (up to [`REPRESENTATION_LIMIT`]) in the
/// coordinates of the graded piece.
pub fn gs3_combination<E: Element>(
    spec: &ValuationSpec,
    qset: &[E],
    f: &E,
) -> Result<core::result::Result<Vec<MonomialWitness<E>>, Gs3Failure>> {
    let value = match gs3_witness(spec, qset, f)? {
        Ok(w) => return Ok(Ok(vec![w])),
        Err(Gs3Failure::ResidueMismatch { value }) => value,
        Err(e) => return Ok(Err(e)),
    };
    let field = f.field();
    let gens: Vec<Value> = qset.iter().map(|q| spec.value(q)).collect::<Result<_>>()?;
    let reps = semigroup_representations(&gens, &value, REPRESENTATION_LIMIT)?;
    let monomials: Vec<E> =
        reps.iter().map(|w| monomial(qset, &w.multiplicities).unwrap_or_else(|| E::unit(field))).collect();
    let columns: Vec<BTreeMap<Vec<u32>, Coeff>> =
        monomials.iter().map(|m| spec.initial_coordinates(m)).collect::<Result<_>>()?;
    let target = spec.initial_coordinates(f)?;
    let Some(z) = solve(field, &columns, &target)? else {
        return Ok(Err(Gs3Failure::ResidueMismatch { value }));
    };
    let mut out = Vec::new();
    let mut rest = f.clone();
    for ((z, w), m) in z.into_iter().zip(reps).zip(monomials) {
        if z.is_zero() {
            continue;
        }
        let term = MonomialWitness { z, multiplicities: w, monomial: m };
        rest = rest.minus(&term.term());
        out.push(term);
    }
    if spec.value(&rest)? <= value {
        return Ok(Err(Gs3Failure::ResidueMismatch { value }));
    }
    Ok(Ok(out))
}

/// Some `z` with `Σ z_k·columns[k] = target`, by Gaussian elimination.
fn solve(field: FieldSpec, columns: &[BTreeMap<Vec<u32>, Coeff>], target: &BTreeMap<Vec<u32>, Coeff>) -> Result<Option<Vec<Coeff>>> {
    let keys: BTreeSet<&Vec<u32>> = columns.iter().flat_map(|c| c.keys()).chain(target.keys()).collect();
    let n = columns.len();
    let entry = |m: &BTreeMap<Vec<u32>, Coeff>, k: &Vec<u32>| m.get(k).cloned().unwrap_or_else(Coeff::zero);
    let mut rows: Vec<Vec<Coeff>> = keys
        .iter()
        .map(|k| columns.iter().map(|c| entry(c, k)).chain(core::iter::once(entry(target, k))).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][col])?;
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for j in 0..=n {
                    let d = field.mul(&factor, &rows[r][j]);
                    rows[i][j] = field.sub(&rows[i][j], &d);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return Ok(None);
    }
    let mut z = vec![Coeff::zero(); n];
    for (i, &col) in pivots.iter().enumerate() {
        z[col] = rows[i][n].clone();
    }
    Ok(Some(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivar::BivarPoly;
    use crate::field::FieldSpec;
    use crate::fixtures;
    use crate::poly::Poly;

    fn qp(c: &[i64]) -> Poly {
        Poly::from_ints(FieldSpec::RATIONALS, c)
    }

    fn ints(v: &[i64]) -> Vec<Value> {
        v.iter().map(|n| Value::int(*n)).collect()
    }

    #[test]
    fn initial_equal_examples() {
        let g = fixtures::gauss_q();
        assert!(initial_equal(&g, &qp(&[0, 1]), &qp(&[0, 1, 1])).unwrap());
        assert!(!initial_equal(&g, &qp(&[0, 1]), &qp(&[0, 2])).unwrap());
        let s = fixtures::squares_embedding(17);
        let q = FieldSpec::RATIONALS;
        assert!(initial_equal(&s, &BivarPoly::y(q), &BivarPoly::x(q)).unwrap());
        assert_eq!(initial_equal(&g, &qp(&[]), &qp(&[1])), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn initial_form_wrapper() {
        let g = fixtures::gauss_q();
        let a = InitialForm::new(&g, &qp(&[0, 1])).unwrap();
        let b = InitialForm::new(&g, &qp(&[0, 1, 5])).unwrap();
        assert_eq!(a.grade(), &Value::int(1));
        assert!(a.same_as(&g, &b).unwrap());
        assert!(InitialForm::new(&g, &qp(&[])).is_err());
    }

    #[test]
    fn subset_select_examples() {
        let g = fixtures::gauss_q();
        let x = qp(&[0, 1]);
        assert_eq!(initial_subset_select(&g, &x, &[qp(&[0, 2]), qp(&[0, -1])]).unwrap(), vec![0, 1]);
        assert_eq!(initial_subset_select(&g, &x, &[x.clone()]).unwrap(), vec![0]);
        let f2 = FieldSpec::prime(2).unwrap();
        let g2 = ValuationSpec::gauss(ValuationSpec::trivial(f2), Coeff::one()).unwrap();
        let x2 = Poly::x(f2);
        assert_eq!(initial_subset_select(&g2, &x2, &[x2.clone(), x2.clone(), x2.clone()]).unwrap(), vec![0]);
    }

    #[test]
    fn subset_select_preconditions() {
        let g = fixtures::gauss_q();
        let x = qp(&[0, 1]);
        assert!(initial_subset_select(&g, &x, &[]).is_err());
        assert!(initial_subset_select(&g, &x, &[qp(&[1])]).is_err());
        assert!(initial_subset_select(&g, &x, &[qp(&[0, 2])]).is_err());
    }

    #[test]
    fn semigroup_examples() {
        let w = semigroup_membership(&ints(&[1]), &Value::int(5)).unwrap().unwrap();
        assert_eq!(w.multiplicities, vec![5]);
        assert!(semigroup_membership(&ints(&[2, 3]), &Value::int(1)).unwrap().is_none());
        assert!(semigroup_membership(&ints(&[3, 5]), &Value::int(7)).unwrap().is_none());
        let w = semigroup_membership(&ints(&[3, 5]), &Value::int(8)).unwrap().unwrap();
        assert_eq!(w.multiplicities, vec![1, 1]);
        assert_eq!(w.total(&ints(&[3, 5])), Value::int(8));
    }

    #[test]
    fn semigroup_edge_cases() {
        assert!(semigroup_membership(&ints(&[0]), &Value::int(1)).unwrap().is_none());
        let w = semigroup_membership(&ints(&[0, 2]), &Value::int(4)).unwrap().unwrap();
        assert_eq!(w.multiplicities, vec![0, 2]);
        let w = semigroup_membership(&[], &Value::zero()).unwrap().unwrap();
        assert!(w.multiplicities.is_empty());
        let w = semigroup_membership(&[Value::ratio(1, 2), Value::ratio(1, 3)], &Value::ratio(5, 6)).unwrap();
        assert_eq!(w.unwrap().multiplicities, vec![1, 1]);
        assert_eq!(semigroup_membership(&ints(&[-1]), &Value::int(1)), Err(Error::NegativeInput));
        assert_eq!(semigroup_membership(&ints(&[1]), &Value::Infinity), Err(Error::NegativeInput));
        assert!(matches!(
            semigroup_membership(&ints(&[1]), &Value::int(1 << 30)),
            Err(Error::SemigroupTooLarge(_))
        ));
    }

    #[test]
    fn lexicographic_order_of_representations() {
        let reps = semigroup_representations(&ints(&[1, 2]), &Value::int(4), 10).unwrap();
        let got: Vec<Vec<u64>> = reps.into_iter().map(|w| w.multiplicities).collect();
        assert_eq!(got, vec![vec![0, 2], vec![2, 1], vec![4, 0]]);
    }

    #[test]
    fn gs3_witness_examples() {
        let q = FieldSpec::RATIONALS;
        let s = fixtures::squares_embedding(17);
        let qset = [BivarPoly::x(q)];
        let w = gs3_witness(&s, &qset, &BivarPoly::y(q)).unwrap().unwrap();
        assert_eq!((w.z, w.multiplicities.multiplicities), (Coeff::one(), vec![1]));
        let f = &BivarPoly::y(q) - &BivarPoly::x(q);
        let w = gs3_witness(&s, &qset, &f).unwrap().unwrap();
        assert_eq!((w.z, w.multiplicities.multiplicities), (Coeff::one(), vec![4]));

        let e = fixtures::shifted_embedding();
        let r = gs3_witness(&e, &[qp(&[0, 1])], &qp(&[-1, 1])).unwrap();
        assert_eq!(r, Err(Gs3Failure::NotInSemigroup { value: Value::int(1) }));
    }

    #[test]
    fn gs3_witness_residue_mismatch() {
        // x^2 - y^2 under weights (1, 1) has initial form x^2 - y^2, not a monomial
        let q = FieldSpec::RATIONALS;
        let m = ValuationSpec::monomial_bivariate(q, Coeff::one(), Coeff::one());
        let f = &BivarPoly::x(q).pow(2) - &BivarPoly::y(q).pow(2);
        let r = gs3_witness(&m, &[BivarPoly::x(q), BivarPoly::y(q)], &f).unwrap();
        assert_eq!(r, Err(Gs3Failure::ResidueMismatch { value: Value::int(2) }));
    }

    #[test]
    fn gs3_witness_requires_centered() {
        let p = fixtures::padic_gauss();
        assert_eq!(gs3_witness(&p, &[qp(&[0, 1])], &qp(&[0, 1])), Err(Error::NotCentered));
    }

    #[test]
    fn gs3_combination_spans_the_graded_piece() {
        let q = FieldSpec::RATIONALS;
        let m = ValuationSpec::monomial_bivariate(q, Coeff::one(), Coeff::one());
        let qset = [BivarPoly::x(q), BivarPoly::y(q)];
        let f = &BivarPoly::x(q).pow(2) - &BivarPoly::y(q).pow(2);
        let terms = gs3_combination(&m, &qset, &f).unwrap().unwrap();
        let sum = terms.iter().fold(BivarPoly::zero(q), |acc, w| &acc + &w.term());
        assert_eq!(sum, f);

        // with Qset {x + y}: in(x) is out of reach, in(2x + 2y) is not
        let mixed = [&BivarPoly::x(q) + &BivarPoly::y(q)];
        let r = gs3_combination(&m, &mixed, &BivarPoly::x(q)).unwrap();
        assert_eq!(r, Err(Gs3Failure::ResidueMismatch { value: Value::int(1) }));
        let g = &BivarPoly::x(q).scaled(&Coeff::from_integer(2.into())) + &BivarPoly::y(q).scaled(&Coeff::from_integer(2.into()));
        let terms = gs3_combination(&m, &mixed, &g).unwrap().unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].z, Coeff::from_integer(2.into()));
    }

    #[test]
    fn initial_coordinates_by_kind() {
        let q = FieldSpec::RATIONALS;
        let m = ValuationSpec::monomial_bivariate(q, Coeff::from_integer(2.into()), Coeff::from_integer(3.into()));
        let f = &(&BivarPoly::x(q).pow(3) + &BivarPoly::y(q).pow(2)) + &BivarPoly::y(q).pow(3);
        let c = m.initial_coordinates(&f).unwrap();
        assert_eq!(c.keys().cloned().collect::<Vec<_>>(), vec![vec![0, 2], vec![3, 0]]);
        let t = fixtures::truncated_gauss();
        assert_eq!(t.initial_coordinates(&qp(&[0, 1])), Err(Error::Unsupported("initial coordinates need a trivial base valuation".into())));
        let g = fixtures::gauss_q();
        let c = g.initial_coordinates(&qp(&[0, 3, 1])).unwrap();
        assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![(vec![1], Coeff::from_integer(3.into()))]);
    }
}
