//! Exact valuations on `K[x]` and `K[x, y]`: truncations `ν_Q`, the level
//! invariant `ε`, key polynomials, initial forms and checkers for the
//! generating-sequence properties GS1*, GS2 and GS3.
//!
//! Everything is exact rational arithmetic. The crate is `no_std` and only
//! needs `alloc`.

#![no_std]

extern crate alloc;

pub mod bivar;
pub mod element;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod genseq;
pub mod graded;
pub mod keypoly;
pub mod poly;
pub mod series;
pub mod valuation;
pub mod value;

pub use bivar::BivarPoly;
pub use element::Element;
pub use error::{Error, Result};
pub use field::{Coeff, FieldSpec};
pub use poly::{Expansion, Poly};
pub use series::{GenSeries, SeriesSource};
pub use valuation::{Embedding, ValReport, ValuationSpec};
pub use value::Value;
