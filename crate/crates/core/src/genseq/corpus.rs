use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bivar::BivarPoly;
use crate::error::{Error, Result};
use crate::field::{Coeff, FieldSpec};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorpusSource {
    Explicit(Vec<BivarPoly>),
    /// Every nonzero polynomial of degree `≤ max_degree` with coefficients
    /// in `F_p`, or in `{0, ±1, …, ±coeff_bound}` over `Q`.
    Exhaustive { coeff_bound: u32 },
    /// `x^i` (or `x^i y^j`) of degree `≤ max_degree`.
    Monomials,
    /// `size` seeded random polynomials with coefficients in `[-coeff_bound, coeff_bound]`.
    Random { size: usize, seed: u64, coeff_bound: u32 },
}

/// A finite set of test polynomials, deterministic in its description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus {
    field: FieldSpec,
    max_degree: u32,
    bivariate: bool,
    sources: Vec<CorpusSource>,
}

impl Corpus {
    pub fn new(field: FieldSpec, max_degree: u32, bivariate: bool) -> Self {
        Corpus { field, max_degree, bivariate, sources: Vec::new() }
    }

    pub fn with(mut self, source: CorpusSource) -> Self {
        self.sources.push(source);
        self
    }

    pub fn exhaustive(field: FieldSpec, max_degree: u32, coeff_bound: u32) -> Self {
        Corpus::new(field, max_degree, false).with(CorpusSource::Exhaustive { coeff_bound })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn is_bivariate(&self) -> bool {
        self.bivariate
    }

    pub fn sources(&self) -> &[CorpusSource] {
        &self.sources
    }

    /// All members in a fixed order, sources concatenated.
    pub fn members(&self) -> Result<Vec<BivarPoly>> {
        let mut out = Vec::new();
        for source in &self.sources {
            match source {
                CorpusSource::Explicit(list) => {
                    for f in list {
                        if f.field() != self.field {
                            return Err(Error::FieldMismatch);
                        }
                        if f.total_degree().unwrap_or(0) > self.max_degree || (!self.bivariate && f.to_univariate().is_none()) {
                            return Err(Error::DegreeBound(format!("{}", f)));
                        }
                        out.push(f.clone());
                    }
                }
                CorpusSource::Exhaustive { coeff_bound } => out.extend(self.exhaustive_members(*coeff_bound)),
                CorpusSource::Monomials => {
                    out.extend(self.shapes().into_iter().map(|(i, j)| BivarPoly::monomial(self.field, Coeff::from_integer(1.into()), i, j)))
                }
                CorpusSource::Random { size, seed, coeff_bound } => out.extend(self.random_members(*size, *seed, *coeff_bound)),
            }
        }
        Ok(out)
    }

    /// Members as univariate polynomials; fails if any involves `y`.
    pub fn univariate_members(&self) -> Result<Vec<Poly>> {
        self.members()?
            .into_iter()
            .map(|f| f.to_univariate().ok_or_else(|| Error::Unsupported(format!("{} is not univariate", f))))
            .collect()
    }

    /// Exponent pairs of degree at most `max_degree`, graded, `x` before `y`.
    fn shapes(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for d in 0..=self.max_degree {
            if self.bivariate {
                out.extend((0..=d).rev().map(|i| (i, d - i)));
            } else {
                out.push((d, 0));
            }
        }
        out
    }

    /// Coefficient values in enumeration order: `0` first, then `1, -1, 2, -2, …`
    /// over `Q` or `1, …, p − 1` over `F_p`.
    fn values(&self, coeff_bound: u32) -> Vec<Coeff> {
        self.field.small_values(coeff_bound)
    }

    /// Degree by degree; within a degree the coefficients of the
    /// top-degree shapes are the most significant digits (so the leading
    /// coefficient runs outermost), then the lower shapes from high to low
    /// degree. Digits run through `0, 1, -1, …`.
    fn exhaustive_members(&self, coeff_bound: u32) -> Vec<BivarPoly> {
        let values = self.values(coeff_bound);
        let mut out = Vec::new();
        for d in 0..=self.max_degree {
            let mut order: Vec<(u32, u32)> = self.shapes().into_iter().filter(|(i, j)| i + j <= d).collect();
            order.sort_by_key(|&(i, j)| (core::cmp::Reverse(i + j), core::cmp::Reverse(i)));
            let top = order.iter().filter(|(i, j)| i + j == d).count();
            let mut digits = vec![0usize; order.len()];
            loop {
                if digits[..top].iter().any(|&k| k != 0) {
                    let f = order.iter().zip(&digits).filter(|(_, &k)| k != 0).fold(
                        BivarPoly::zero(self.field),
                        |acc, (shape, &k)| &acc + &BivarPoly::monomial(self.field, values[k].clone(), shape.0, shape.1),
                    );
                    out.push(f);
                }
                if !increment(&mut digits, values.len()) {
                    break;
                }
            }
        }
        out
    }

    fn random_members(&self, size: usize, seed: u64, coeff_bound: u32) -> Vec<BivarPoly> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(size);
        let shapes = self.shapes();
        let bound = i64::from(coeff_bound.max(1));
        let coeff = |rng: &mut ChaCha8Rng| loop {
            let c = if self.field.is_finite() {
                self.field.from_int(rng.gen_range(0..self.field.characteristic()))
            } else {
                self.field.from_int(rng.gen_range(-bound..=bound))
            };
            if !c.is_zero() {
                return c;
            }
        };
        while out.len() < size {
            let f = if self.bivariate {
                let terms = rng.gen_range(1..=4);
                (0..terms).fold(BivarPoly::zero(self.field), |acc, _| {
                    let (i, j) = shapes[rng.gen_range(0..shapes.len())];
                    &acc + &BivarPoly::monomial(self.field, coeff(&mut rng), i, j)
                })
            } else {
                let d = rng.gen_range(0..=self.max_degree);
                let mut f = BivarPoly::monomial(self.field, coeff(&mut rng), d, 0);
                for i in 0..d {
                    if rng.gen_bool(0.75) {
                        f = &f + &BivarPoly::monomial(self.field, coeff(&mut rng), i, 0);
                    }
                }
                f
            };
            if !f.is_zero() {
                out.push(f);
            }
        }
        out
    }

    /// Short description used as the scope of reports.
    pub fn describe(&self) -> String {
        format!("{}", self)
    }
}

/// Odometer increment with the last digit fastest; `false` on wrap-around.
fn increment(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

impl fmt::Display for Corpus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} corpus over {}, degree <= {}: ", if self.bivariate { "bivariate" } else { "univariate" }, self.field, self.max_degree)?;
        for (k, s) in self.sources.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            match s {
                CorpusSource::Explicit(list) => write!(f, "{} listed", list.len())?,
                CorpusSource::Exhaustive { .. } if self.field.is_finite() => f.write_str("exhaustive")?,
                CorpusSource::Exhaustive { coeff_bound } => write!(f, "exhaustive with |c| <= {}", coeff_bound)?,
                CorpusSource::Monomials => f.write_str("monomials")?,
                CorpusSource::Random { size, seed, coeff_bound } => {
                    write!(f, "{} random (seed {}, |c| <= {})", size, seed, coeff_bound)?
                }
            }
        }
        Ok(())
    }
}
