//! Exact arithmetic: rationals, dense univariate polynomials and the real
//! cyclotomic fields that hold the Chebyshev critical values.

mod numfield;
mod rational;
mod traits;
mod upoly;

pub use numfield::{alg_inv, cos_multiple, cyclotomic, embed_lambda, euler_phi, real_subfield_minpoly, AlgNum, FieldSpec};
pub use rational::{ParseRationalError, Rational};
pub use traits::Field;
pub use upoly::UPoly;
