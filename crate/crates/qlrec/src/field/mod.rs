//! Exact arithmetic: rationals, Laurent polynomials, rational functions and
//! linear algebra over them.

pub mod expr;
pub mod matrix;
mod packed;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod upoly;

pub use expr::{parse_ratfunc, parse_with};
pub use matrix::{mat_vec, nullspace, rank, RFMatrix};
pub use poly::{int, sym, MultiPoly};
pub use ratfunc::{ratfunc_eq, rq, rsym, substitute, RatFunc};
pub use rational::Rational;
pub use upoly::{common_polys, PolyValue};
