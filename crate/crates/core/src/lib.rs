//! Sums of products of Riemann zeta tails.
//!
//! For real exponents `i_1, ..., i_k > 1` the series
//! `sum_{n>=1} prod_j (zeta(i_j) - sum_{m<=n} m^-i_j)` has a closed form in
//! multiple zeta values: a sum over all weak orderings of the exponents,
//! minus `prod_j zeta(i_j)`. This crate generates those formulas
//! symbolically ([`tails`]), evaluates every ingredient with certified error
//! bounds ([`numerics`]), reduces the integer-argument cases to polynomials in
//! single zeta values where classical identities allow ([`symbolic`]), and
//! cross-checks everything against direct summation ([`verify`]).

// `!(x > bound)` is used deliberately so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod domain;
pub mod error;
pub mod numerics;
pub mod rational;
pub mod symbolic;
pub mod tails;
pub mod verify;

pub use domain::{
    compositions, converges, permutations, weak_ordering_count, Composition, ExponentList, MzvIndex, MAX_ARITY,
};
pub use error::{Error, Result};
pub use numerics::EvalReport;
pub use rational::Rational;
