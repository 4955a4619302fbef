//! Exact polynomial and rational-function arithmetic.

pub mod gcd;
pub mod integrate;
pub mod linear;
pub mod matrix;
pub mod poly;
pub mod rat;
pub mod ratfn;

pub use gcd::{gcd, lcm};
pub use integrate::{euler_integrate, gradient};
pub use matrix::{Entry, Matrix, PolyMatrix, RatMatrix};
pub use poly::{Monomial, Poly, Vars, MAX_VARS};
pub use rat::Rat;
pub use ratfn::RatFn;
