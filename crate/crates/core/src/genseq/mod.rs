//! Generating-sequence checkers over bounded corpora.
//!
//! A failing report carries a witness that can be rechecked independently.
//! A passing report only says that no counterexample exists in the stated
//! scope.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bivar::BivarPoly;
use crate::poly::Poly;

mod corpus;
mod counterexample;
mod crosscheck;
mod gs1;
mod gs23;

pub use corpus::{Corpus, CorpusSource};
pub use counterexample::{counterexample_corpus, counterexample_run, CounterexampleReport, ValueAssertion, COUNTEREXAMPLE_SEED};
pub use crosscheck::{theorem_crosschecks, CrosscheckReport, Implication, ImplicationStatus};
pub use gs1::{completeness_check, gs1star_decompose, gs1star_verify, CertViolation, Gs1StarCert};
pub use gs23::{default_value_cap, gs2_check, gs3_check};

/// `Q^λ` as a map from Qset index to a positive exponent; empty is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct MonomialExpr {
    exponents: BTreeMap<usize, u32>,
}

impl MonomialExpr {
    pub fn one() -> Self {
        MonomialExpr::default()
    }

    pub fn single(index: usize, exponent: u32) -> Self {
        let mut m = MonomialExpr::default();
        m.multiply(index, exponent);
        m
    }

    pub fn exponents(&self) -> &BTreeMap<usize, u32> {
        &self.exponents
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Multiplies in `Q_index^exponent`.
    pub fn multiply(&mut self, index: usize, exponent: u32) {
        if exponent > 0 {
            *self.exponents.entry(index).or_insert(0) += exponent;
        }
    }

    /// `Σ λ(Q)·deg(Q)`; `None` if an index is outside the Qset.
    pub fn degree(&self, qset: &[Poly]) -> Option<usize> {
        self.exponents
            .iter()
            .map(|(i, e)| qset.get(*i).and_then(Poly::degree).map(|d| d * *e as usize))
            .sum()
    }

    pub fn evaluate(&self, qset: &[Poly]) -> Option<Poly> {
        let field = qset.first()?.field();
        self.exponents.iter().try_fold(Poly::one(field), |acc, (i, e)| Some(&acc * &qset.get(*i)?.pow(*e)))
    }

    /// `(x - 1)^2*x`, or `1` for the empty monomial.
    pub fn render(&self, qset: &[Poly]) -> String {
        if self.is_one() {
            return String::from("1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(i, e)| {
                let base = match qset.get(*i) {
                    Some(q) if q.coeffs().iter().filter(|c| !num_traits::Zero::is_zero(*c)).count() == 1 => {
                        alloc::format!("{}", q)
                    }
                    Some(q) => alloc::format!("({})", q),
                    None => alloc::format!("Q{}", i),
                };
                if *e == 1 { base } else { alloc::format!("{}^{}", base, e) }
            })
            .collect();
        parts.join("*")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    Completeness,
    Gs1Star,
    Gs2,
    Gs3,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Completeness => "completeness",
            Property::Gs1Star => "GS1*",
            Property::Gs2 => "GS2",
            Property::Gs3 => "GS3",
        })
    }
}

/// What went wrong for a failing corpus member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// The corpus polynomial being checked.
    pub member: BivarPoly,
    /// The polynomial the check actually failed on, e.g. a peeled tail.
    pub element: BivarPoly,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub property: Property,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Corpus description plus any bounds the checker used.
    pub scope: String,
    /// Corpus members examined.
    pub checked: usize,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub(crate) fn pass(property: Property, scope: String, checked: usize) -> Self {
        CheckReport { property, verdict: Verdict::Pass, witness: None, scope, checked }
    }

    pub(crate) fn fail(property: Property, scope: String, checked: usize, witness: Witness) -> Self {
        CheckReport { property, verdict: Verdict::Fail, witness: Some(witness), scope, checked }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({} checked; {})", self.property, self.verdict, self.checked, self.scope)?;
        if let Some(w) = &self.witness {
            write!(f, "\n  witness {}", w.element)?;
            if w.element != w.member {
                write!(f, " (from corpus member {})", w.member)?;
            }
            write!(f, ": {}", w.reason)?;
        }
        Ok(())
    }
}
