//! Serializable report shapes. Field order is declaration order, so the JSON
//! output is stable.

use serde::Serialize;
use valgen_core::genseq::{
    CheckReport, CounterexampleReport, CrosscheckReport, Gs1StarCert, ImplicationStatus, Witness,
};
use valgen_core::graded::{Gs3Failure, MonomialWitness};
use valgen_core::BivarPoly;
use valgen_core::Poly;

#[derive(Debug, Serialize)]
pub struct WitnessJson {
    pub member: String,
    pub element: String,
    pub reason: String,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        WitnessJson { member: w.member.to_string(), element: w.element.to_string(), reason: w.reason.clone() }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckJson {
    pub property: String,
    pub verdict: String,
    pub checked: usize,
    pub scope: String,
    pub witness: Option<WitnessJson>,
}

impl From<&CheckReport> for CheckJson {
    fn from(r: &CheckReport) -> Self {
        CheckJson {
            property: r.property.to_string(),
            verdict: r.verdict.to_string(),
            checked: r.checked,
            scope: r.scope.clone(),
            witness: r.witness.as_ref().map(WitnessJson::from),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TermJson {
    pub coefficient: String,
    pub monomial: String,
}

#[derive(Debug, Serialize)]
pub struct CertJson {
    pub poly: String,
    pub terms: Vec<TermJson>,
    pub verified: bool,
}

impl CertJson {
    pub fn new(f: &Poly, cert: &Gs1StarCert, qset: &[Poly], verified: bool) -> Self {
        CertJson {
            poly: f.to_string(),
            terms: cert
                .terms
                .iter()
                .map(|(a, m)| TermJson { coefficient: a.to_string(), monomial: m.render(qset) })
                .collect(),
            verified,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Gs3WitnessJson {
    pub poly: String,
    pub value: String,
    pub found: bool,
    pub z: Option<String>,
    pub multiplicities: Option<Vec<u64>>,
    pub monomial: Option<String>,
    pub failure: Option<String>,
}

impl Gs3WitnessJson {
    pub fn new(f: &BivarPoly, value: String, r: &Result<MonomialWitness<BivarPoly>, Gs3Failure>) -> Self {
        match r {
            Ok(w) => Gs3WitnessJson {
                poly: f.to_string(),
                value,
                found: true,
                z: Some(w.z.to_string()),
                multiplicities: Some(w.multiplicities.multiplicities.clone()),
                monomial: Some(w.monomial.to_string()),
                failure: None,
            },
            Err(e) => Gs3WitnessJson {
                poly: f.to_string(),
                value,
                found: false,
                z: None,
                multiplicities: None,
                monomial: None,
                failure: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ImplicationJson {
    pub name: String,
    pub status: String,
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct CrosscheckJson {
    pub all_hold: bool,
    pub implications: Vec<ImplicationJson>,
    pub observations: Vec<String>,
    pub reports: Vec<CheckJson>,
}

impl From<&CrosscheckReport> for CrosscheckJson {
    fn from(r: &CrosscheckReport) -> Self {
        CrosscheckJson {
            all_hold: r.all_hold(),
            implications: r
                .implications
                .iter()
                .map(|i| {
                    let (status, detail) = match &i.status {
                        ImplicationStatus::Holds => ("holds", None),
                        ImplicationStatus::Violated(d) => ("violated", Some(d.clone())),
                        ImplicationStatus::NotApplicable(d) => ("not_applicable", Some(d.clone())),
                    };
                    ImplicationJson { name: i.name.to_string(), status: status.into(), detail }
                })
                .collect(),
            observations: r.observations.clone(),
            reports: r.reports.iter().map(CheckJson::from).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AssertionJson {
    pub poly: String,
    pub expected: String,
    pub computed: String,
    pub holds: bool,
}

#[derive(Debug, Serialize)]
pub struct CounterexampleJson {
    pub precision: u64,
    pub valuation: String,
    pub qset: Vec<String>,
    pub values: Vec<AssertionJson>,
    pub gs3: CheckJson,
    pub gs2: CheckJson,
    pub separates: bool,
}

impl CounterexampleJson {
    pub fn new(r: &CounterexampleReport, valuation: String) -> Self {
        CounterexampleJson {
            precision: r.precision,
            valuation,
            qset: vec!["x".into()],
            values: r
                .values
                .iter()
                .map(|a| AssertionJson {
                    poly: a.poly.to_string(),
                    expected: a.expected.to_string(),
                    computed: a.computed.to_string(),
                    holds: a.holds(),
                })
                .collect(),
            gs3: CheckJson::from(&r.gs3),
            gs2: CheckJson::from(&r.gs2),
            separates: r.separates(),
        }
    }
}
