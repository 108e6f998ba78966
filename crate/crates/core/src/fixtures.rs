//! The standard valuations used throughout the tests, the CLI demo and the
//! acceptance suite.

use num_traits::One;

use crate::field::{Coeff, FieldSpec};
use crate::poly::Poly;
use crate::series::{GenSeries, SeriesSource};
use crate::valuation::{Embedding, ValuationSpec};

fn gauss(base: ValuationSpec, gamma: Coeff) -> ValuationSpec {
    ValuationSpec::gauss(base, gamma).expect("base valuation")
}

/// `gauss(trivial(Q), 1)`: the `x`-adic order on `Q[x]`.
pub fn gauss_q() -> ValuationSpec {
    gauss(ValuationSpec::trivial(FieldSpec::RATIONALS), Coeff::one())
}

/// `gauss(trivial(F_3), 1)`.
pub fn gauss_f3() -> ValuationSpec {
    gauss(ValuationSpec::trivial(FieldSpec::prime(3).expect("prime")), Coeff::one())
}

/// `gauss(p_adic(2), 1/2)`.
pub fn padic_gauss() -> ValuationSpec {
    gauss(ValuationSpec::p_adic(2).expect("prime"), Coeff::new(1.into(), 2.into()))
}

/// `x ↦ t`, `y ↦ Σ t^{i²}` over `Q`, trusted below `precision`.
pub fn squares_embedding(precision: u64) -> ValuationSpec {
    let q = FieldSpec::RATIONALS;
    let x = SeriesSource::Fixed(GenSeries::monomial(q, Coeff::one(), Coeff::one()));
    let y = SeriesSource::Squares { field: q, bound: precision };
    ValuationSpec::embedding(Embedding::new(x, Some(y)).expect("nonzero images"))
}

/// The restriction of [`squares_embedding`] to `Q[x]` (`x ↦ t`).
pub fn squares_restricted() -> ValuationSpec {
    let q = FieldSpec::RATIONALS;
    let x = SeriesSource::Fixed(GenSeries::monomial(q, Coeff::one(), Coeff::one()));
    ValuationSpec::embedding(Embedding::new(x, None).expect("nonzero image"))
}

/// `x ↦ 1 + t` over `Q`: the `(x − 1)`-adic order.
pub fn shifted_embedding() -> ValuationSpec {
    let q = FieldSpec::RATIONALS;
    let image = GenSeries::exact(q, [(Coeff::from_integer(0.into()), Coeff::one()), (Coeff::one(), Coeff::one())])
        .expect("rational coefficients");
    ValuationSpec::embedding(Embedding::new(SeriesSource::Fixed(image), None).expect("nonzero image"))
}

/// `ν_{x−1}` of [`padic_gauss`]: a Gauss valuation centered at 1.
pub fn truncated_gauss() -> ValuationSpec {
    let key = Poly::from_ints(FieldSpec::RATIONALS, &[-1, 1]);
    ValuationSpec::truncation(padic_gauss(), key).expect("monic key")
}
