use alloc::string::String;

use crate::poly::Poly;
use crate::value::Value;

/// Errors raised by the algebra and the checkers built on top of it.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("denominator {0} is not invertible in the field")]
    NotInvertible(String),
    #[error("divisor must be monic")]
    NonMonicDivisor,
    #[error("divisor must have degree at least 1")]
    ConstantDivisor,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("Hasse derivative order must be at least 1")]
    InvalidDerivativeOrder,
    #[error("leading exponent undetermined below precision {precision}")]
    PrecisionExhausted { precision: Value },
    #[error("valuation spec is invalid: {0}")]
    InvalidSpec(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("operation requires a finite field")]
    NonFiniteField,
    #[error("root fixture is empty")]
    EmptyFixture,
    #[error("root fixture lists {given} roots for a polynomial of degree {degree}")]
    FixtureLength { given: usize, degree: usize },
    #[error("semigroup data must be finite and non-negative")]
    NegativeInput,
    #[error("semigroup target {0} is too large for the exact solver")]
    SemigroupTooLarge(String),
    #[error("values differ: {left} vs {right}")]
    UnequalValues { left: Value, right: Value },
    #[error("valuation is not centered")]
    NotCentered,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no key Q with deg(Q) <= deg(f) and nu_Q(f) = nu(f) for f = {0}")]
    NoEligibleQ(Poly),
    #[error("precision {0} is below the minimum of 17")]
    PrecisionTooLow(u64),
    #[error("polynomial {0} exceeds the corpus degree bound")]
    DegreeBound(String),
}

pub type Result<T> = core::result::Result<T, Error>;
