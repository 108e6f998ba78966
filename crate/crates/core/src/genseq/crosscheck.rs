use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bivar::BivarPoly;
use crate::error::{Error, Result};
use crate::graded::{gs3_witness, semigroup_membership};
use crate::keypoly::{epsilon, is_key};
use crate::poly::Poly;
use crate::valuation::ValuationSpec;
use crate::value::Value;

use super::{completeness_check, gs1star_decompose, gs1star_verify, gs2_check, gs3_check, CheckReport, Corpus};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ImplicationStatus {
    Holds,
    Violated(String),
    NotApplicable(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Implication {
    pub name: &'static str,
    pub status: ImplicationStatus,
}

impl fmt::Display for Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            ImplicationStatus::Holds => write!(f, "{}: holds", self.name),
            ImplicationStatus::Violated(why) => write!(f, "{}: VIOLATED ({})", self.name, why),
            ImplicationStatus::NotApplicable(why) => write!(f, "{}: not applicable ({})", self.name, why),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub implications: Vec<Implication>,
    /// Facts that are recorded but never asserted.
    pub observations: Vec<String>,
    pub reports: Vec<CheckReport>,
}

impl CrosscheckReport {
    pub fn all_hold(&self) -> bool {
        !self.implications.iter().any(|i| matches!(i.status, ImplicationStatus::Violated(_)))
    }
}

fn status(ok: bool, why: impl FnOnce() -> String) -> ImplicationStatus {
    if ok { ImplicationStatus::Holds } else { ImplicationStatus::Violated(why()) }
}

fn na(why: &str) -> ImplicationStatus {
    ImplicationStatus::NotApplicable(why.into())
}

/// Whether every Qset member is provably a key polynomial: by exhaustive
/// search over `F_p`, or by degree 1 (always key).
fn all_key(spec: &ValuationSpec, qset: &[Poly]) -> Result<Option<bool>> {
    for q in qset {
        if !q.is_monic() || q.is_constant() {
            return Ok(Some(false));
        }
        if q.degree() == Some(1) {
            continue;
        }
        if !spec.field().is_finite() {
            return Ok(None);
        }
        if !is_key(spec, q)?.is_key {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

/// Runs the checkers on one fixture and tests the implications between them:
///
/// * GS2 at every corpus value implies GS3;
/// * GS3 implies every corpus value lies in the semigroup of `ν(Q)`;
/// * with residue field `k`, semigroup membership of `ν(f)` yields a GS3 witness for `f`;
/// * for key Qsets, completeness holds exactly when every member has a verified GS1* certificate;
/// * for key Qsets, `ε(Q) ≤ ε(Q′)` implies `ν_{Q′}(Q) = ν(Q)`.
pub fn theorem_crosschecks(spec: &ValuationSpec, qset: &[BivarPoly], corpus: &Corpus) -> Result<CrosscheckReport> {
    let mut implications = Vec::new();
    let mut observations = Vec::new();
    let mut reports = Vec::new();
    let members = corpus.members()?;
    let mut corpus_values = BTreeSet::new();
    for f in &members {
        corpus_values.insert(spec.value(f)?);
    }
    let generators: Vec<Value> = qset.iter().map(|q| spec.value(q)).collect::<Result<_>>()?;

    if spec.is_centered() {
        let gs3 = gs3_check(spec, qset, corpus, None)?;
        // None: GS2 cannot be decided for this Qset (non-monomial members on K[x, y])
        let mut gs2_all = Some(true);
        let mut gs2_failure = None;
        for gamma in &corpus_values {
            if !gamma.is_finite() {
                continue;
            }
            match gs2_check(spec, qset, gamma, corpus) {
                Ok(r) if r.passed() => {}
                Ok(r) => {
                    gs2_all = Some(false);
                    gs2_failure = Some(r);
                    break;
                }
                Err(Error::Unsupported(_)) => {
                    gs2_all = None;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        implications.push(Implication {
            name: "GS2 => GS3",
            status: match gs2_all {
                Some(true) => status(gs3.passed(), || format!("GS2 passes at every corpus value but {}", gs3)),
                Some(false) => na("GS2 fails on the corpus"),
                None => na("GS2 is not decidable for this Qset"),
            },
        });

        let mut outside = None;
        for v in &corpus_values {
            if semigroup_membership(&generators, v)?.is_none() {
                outside = Some(v.clone());
                break;
            }
        }
        implications.push(Implication {
            name: "GS3 => values in semigroup",
            status: if gs3.passed() {
                status(outside.is_none(), || format!("value {} not generated", outside.clone().expect("set")))
            } else {
                na("GS3 fails on the corpus")
            },
        });

        implications.push(Implication {
            name: "semigroup + residue field k => GS3 witness",
            status: if spec.residue_field_is_constants() == Some(true) {
                let mut bad = None;
                for f in &members {
                    let v = spec.value(f)?;
                    if semigroup_membership(&generators, &v)?.is_some() && gs3_witness(spec, qset, f)?.is_err() {
                        bad = Some(f.clone());
                        break;
                    }
                }
                status(bad.is_none(), || format!("{} has no monomial witness", bad.clone().expect("set")))
            } else {
                na("residue field is not known to be k")
            },
        });

        observations.push(format!(
            "GS3 {} and GS2 {} on this corpus{}",
            gs3.verdict,
            match gs2_all {
                Some(true) => "passes",
                Some(false) => "fails",
                None => "undecided",
            },
            if gs3.passed() && gs2_all == Some(false) { " (GS3 without GS2)" } else { "" }
        ));
        reports.push(gs3);
        if let Some(r) = gs2_failure {
            reports.push(r);
        }
    } else {
        let why = "valuation is not centered";
        for name in ["GS2 => GS3", "GS3 => values in semigroup", "semigroup + residue field k => GS3 witness"] {
            implications.push(Implication { name, status: na(why) });
        }
    }

    let univariate: Option<Vec<Poly>> = qset.iter().map(BivarPoly::to_univariate).collect();
    match (univariate, spec.is_bivariate(), corpus.is_bivariate()) {
        (Some(polys), false, false) => match all_key(spec, &polys)? {
            Some(true) => {
                let complete = completeness_check(spec, &polys, corpus)?;
                let mut decomposed = true;
                let mut first_bad = None;
                for f in corpus.univariate_members()? {
                    let ok = match gs1star_decompose(spec, &polys, &f) {
                        Ok(cert) => gs1star_verify(spec, &polys, &f, &cert)?.is_ok(),
                        Err(Error::NoEligibleQ(_)) => false,
                        Err(e) => return Err(e),
                    };
                    if !ok {
                        decomposed = false;
                        first_bad = Some(f);
                        break;
                    }
                }
                implications.push(Implication {
                    name: "complete <=> GS1* certificates",
                    status: status(complete.passed() == decomposed, || {
                        format!(
                            "completeness {} but decomposition {}",
                            complete.verdict,
                            match &first_bad {
                                Some(f) => format!("fails on {}", f),
                                None => "succeeds".into(),
                            }
                        )
                    }),
                });
                reports.push(complete);
                implications.push(Implication { name: "epsilon order => truncation agrees", status: epsilon_transfer(spec, &polys)? });
            }
            Some(false) => {
                for name in ["complete <=> GS1* certificates", "epsilon order => truncation agrees"] {
                    implications.push(Implication { name, status: na("Qset is not a set of key polynomials") });
                }
            }
            None => {
                for name in ["complete <=> GS1* certificates", "epsilon order => truncation agrees"] {
                    implications.push(Implication { name, status: na("key property undecidable over an infinite field") });
                }
            }
        },
        _ => {
            for name in ["complete <=> GS1* certificates", "epsilon order => truncation agrees"] {
                implications.push(Implication { name, status: na("needs a univariate valuation and corpus") });
            }
        }
    }
    observations.push("GS3 => GS2 is not asserted".into());
    Ok(CrosscheckReport { implications, observations, reports })
}

fn epsilon_transfer(spec: &ValuationSpec, qset: &[Poly]) -> Result<ImplicationStatus> {
    let eps: Vec<Value> = qset.iter().map(|q| epsilon(spec, q).map(|r| r.epsilon)).collect::<Result<_>>()?;
    for (i, q) in qset.iter().enumerate() {
        for (j, q2) in qset.iter().enumerate() {
            if i == j || eps[i] > eps[j] {
                continue;
            }
            let nu = spec.value(q)?;
            let truncated = spec.nu_q(q2, q)?;
            if truncated != nu {
                return Ok(ImplicationStatus::Violated(format!(
                    "eps({}) <= eps({}) but nu_{{{}}}({}) = {} != {}",
                    q, q2, q2, q, truncated, nu
                )));
            }
        }
    }
    Ok(ImplicationStatus::Holds)
}
