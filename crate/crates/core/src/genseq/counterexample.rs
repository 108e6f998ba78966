use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bivar::BivarPoly;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::fixtures;
use crate::value::Value;

use super::{gs2_check, gs3_check, CheckReport, Corpus, CorpusSource};

/// Seed of the random part of the counterexample corpus.
pub const COUNTEREXAMPLE_SEED: u64 = 20_240_317;
const RANDOM_MEMBERS: usize = 100;
const COEFF_BOUND: u32 = 5;
const MIN_PRECISION: u64 = 17;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueAssertion {
    pub label: String,
    pub poly: BivarPoly,
    pub expected: Value,
    pub computed: Value,
}

impl ValueAssertion {
    pub fn holds(&self) -> bool {
        self.expected == self.computed
    }
}

/// Everything computed for `x ↦ t`, `y ↦ Σ t^{i²}` with `Q = {x}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub precision: u64,
    /// `ν(x)`, `ν(y)` and `ν(y − Σ_{i<k} x^{i²}) = k²` for every `k² < precision`.
    pub values: Vec<ValueAssertion>,
    pub gs3: CheckReport,
    pub gs2: CheckReport,
}

impl CounterexampleReport {
    /// Values as expected, GS3 passing and GS2 failing on `y`.
    pub fn separates(&self) -> bool {
        let y = BivarPoly::y(FieldSpec::RATIONALS);
        self.values.iter().all(ValueAssertion::holds)
            && self.gs3.passed()
            && !self.gs2.passed()
            && self.gs2.witness.as_ref().is_some_and(|w| w.element == y)
    }
}

/// The bivariate corpus used by [`counterexample_run`].
pub fn counterexample_corpus() -> Corpus {
    Corpus::new(FieldSpec::RATIONALS, 3, true)
        .with(CorpusSource::Monomials)
        .with(CorpusSource::Random { size: RANDOM_MEMBERS, seed: COUNTEREXAMPLE_SEED, coeff_bound: COEFF_BOUND })
}

/// Builds the squares embedding trusted below `precision` and checks that
/// `{x}` satisfies GS3 but not GS2.
pub fn counterexample_run(precision: u64) -> Result<CounterexampleReport> {
    if precision < MIN_PRECISION {
        return Err(Error::PrecisionTooLow(precision));
    }
    let q = FieldSpec::RATIONALS;
    let spec = fixtures::squares_embedding(precision);
    let x = BivarPoly::x(q);
    let y = BivarPoly::y(q);
    let mut values = Vec::new();
    values.push(ValueAssertion { label: "x".into(), poly: x.clone(), expected: Value::int(1), computed: spec.value(&x)? });
    let mut tail = y.clone();
    let mut label = String::from("y");
    let mut k: u32 = 1;
    while u64::from(k * k) < precision {
        let computed = spec.value(&tail)?;
        values.push(ValueAssertion { label: label.clone(), poly: tail.clone(), expected: Value::int(i64::from(k * k)), computed });
        tail = &tail - &x.pow(k * k);
        label = format!("{} - {}", label, if k == 1 { String::from("x") } else { format!("x^{}", k * k) });
        k += 1;
    }
    let corpus = counterexample_corpus();
    let qset = [x];
    let gs3 = gs3_check(&spec, &qset, &corpus, None)?;
    let gs2 = gs2_check(&spec, &qset, &Value::int(1), &corpus)?;
    Ok(CounterexampleReport { precision, values, gs3, gs2 })
}
