//! JSON files: valuation specs and checker fixtures.
//!
//! A spec is a tree of `{"kind": ...}` nodes, e.g.
//! `{"kind":"gauss","base":{"kind":"trivial","field":"Q"},"gamma":"1"}`.
//! Values and rationals are strings (`"4"`, `"9/2"`), polynomials and series
//! use the text grammar of [`crate::parse`].

use std::path::Path;

use serde::{Deserialize, Serialize};
use valgen_core::genseq::{Corpus, CorpusSource};
use valgen_core::{BivarPoly, Embedding, FieldSpec, ValuationSpec};

use crate::parse::{parse_bivariate, parse_field, parse_poly, parse_rational, parse_series, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Spec(#[from] valgen_core::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpecFile {
    Trivial {
        field: String,
    },
    PAdic {
        p: u64,
    },
    Gauss {
        base: Box<SpecFile>,
        gamma: String,
    },
    Embedding {
        field: String,
        images: Images,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_precision: Option<u64>,
    },
    Truncation {
        ambient: Box<SpecFile>,
        q: String,
    },
    MonomialBivariate {
        field: String,
        weight_x: String,
        weight_y: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Images {
    pub x: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
}

impl SpecFile {
    pub fn build(&self) -> Result<ValuationSpec, FormatError> {
        Ok(match self {
            SpecFile::Trivial { field } => ValuationSpec::trivial(parse_field(field)?),
            SpecFile::PAdic { p } => ValuationSpec::p_adic(*p)?,
            SpecFile::Gauss { base, gamma } => ValuationSpec::gauss(base.build()?, parse_rational(gamma)?)?,
            SpecFile::Embedding { field, images, max_precision } => {
                let field = parse_field(field)?;
                let x = parse_series(&images.x, field)?;
                let y = images.y.as_deref().map(|s| parse_series(s, field)).transpose()?;
                let mut e = Embedding::new(x, y)?;
                if let Some(cap) = max_precision {
                    e = e.with_max_precision(*cap);
                }
                ValuationSpec::embedding(e)
            }
            SpecFile::Truncation { ambient, q } => {
                let ambient = ambient.build()?;
                let key = parse_poly(q, ambient.field())?;
                ValuationSpec::truncation(ambient, key)?
            }
            SpecFile::MonomialBivariate { field, weight_x, weight_y } => {
                ValuationSpec::monomial_bivariate(parse_field(field)?, parse_rational(weight_x)?, parse_rational(weight_y)?)
            }
        })
    }

    pub fn from_spec(spec: &ValuationSpec) -> SpecFile {
        match spec {
            ValuationSpec::Trivial(field) => SpecFile::Trivial { field: field.to_string() },
            ValuationSpec::PAdic(p) => SpecFile::PAdic { p: *p },
            ValuationSpec::Gauss { base, gamma } => {
                SpecFile::Gauss { base: Box::new(SpecFile::from_spec(base)), gamma: gamma.to_string() }
            }
            ValuationSpec::Embedding(e) => SpecFile::Embedding {
                field: e.field().to_string(),
                images: Images { x: e.x_image().to_string(), y: e.y_image().map(|s| s.to_string()) },
                max_precision: (e.max_precision() != valgen_core::valuation::DEFAULT_MAX_PRECISION).then_some(e.max_precision()),
            },
            ValuationSpec::Truncation { ambient, key } => {
                SpecFile::Truncation { ambient: Box::new(SpecFile::from_spec(ambient)), q: key.to_string() }
            }
            ValuationSpec::MonomialBivariate { field, weight_x, weight_y } => SpecFile::MonomialBivariate {
                field: field.to_string(),
                weight_x: weight_x.to_string(),
                weight_y: weight_y.to_string(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SourceFile {
    Explicit { polys: Vec<String> },
    Exhaustive {
        #[serde(default = "default_coeff_bound")]
        coeff_bound: u32,
    },
    Monomials,
    Random {
        size: usize,
        seed: u64,
        #[serde(default = "default_random_bound")]
        coeff_bound: u32,
    },
}

fn default_coeff_bound() -> u32 {
    1
}

fn default_random_bound() -> u32 {
    5
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusFile {
    pub max_degree: u32,
    #[serde(default)]
    pub bivariate: bool,
    pub sources: Vec<SourceFile>,
}

impl CorpusFile {
    pub fn build(&self, field: FieldSpec) -> Result<Corpus, FormatError> {
        let mut corpus = Corpus::new(field, self.max_degree, self.bivariate);
        for s in &self.sources {
            corpus = corpus.with(match s {
                SourceFile::Explicit { polys } => CorpusSource::Explicit(
                    polys.iter().map(|p| parse_bivariate(p, field)).collect::<Result<_, _>>()?,
                ),
                SourceFile::Exhaustive { coeff_bound } => CorpusSource::Exhaustive { coeff_bound: *coeff_bound },
                SourceFile::Monomials => CorpusSource::Monomials,
                SourceFile::Random { size, seed, coeff_bound } => {
                    CorpusSource::Random { size: *size, seed: *seed, coeff_bound: *coeff_bound }
                }
            });
        }
        Ok(corpus)
    }
}

/// `{spec, qset, corpus}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    pub spec: SpecFile,
    pub qset: Vec<String>,
    pub corpus: CorpusFile,
}

pub struct Fixture {
    pub spec: ValuationSpec,
    pub qset: Vec<BivarPoly>,
    pub corpus: Corpus,
}

impl FixtureFile {
    pub fn build(&self) -> Result<Fixture, FormatError> {
        let spec = self.spec.build()?;
        let field = spec.field();
        let qset = self.qset.iter().map(|q| parse_bivariate(q, field)).collect::<Result<_, _>>()?;
        Ok(Fixture { spec, qset, corpus: self.corpus.build(field)? })
    }
}

fn read(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub fn load_spec(path: &Path) -> Result<ValuationSpec, FormatError> {
    serde_json::from_str::<SpecFile>(&read(path)?)?.build()
}

pub fn load_fixture(path: &Path) -> Result<Fixture, FormatError> {
    serde_json::from_str::<FixtureFile>(&read(path)?)?.build()
}
