//! Exact verification and classification of retractions of polynomial rings
//! `k[x1, ..., xn]` and of exponential maps on them, over the rationals and
//! prime fields.
//!
//! Everything is exact. Questions that are undecidable by finite linear
//! algebra (subalgebra membership, algebraic independence, rings of
//! constants) are answered up to an explicit total-degree bound, and every
//! report carries that bound.

pub mod classifier;
pub mod corpus;
pub mod endo;
pub mod error;
pub mod expmap;
pub mod field;
pub mod grading;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod subalgebra;

pub use error::{Error, FieldError, PolyError, Result};
pub use field::{FieldSpec, Scalar};
pub use poly::{ExponentVector, Polynomial, Ring};
