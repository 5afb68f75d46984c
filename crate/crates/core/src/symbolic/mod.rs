//! Exact identities for multiple zeta values with integer arguments.

mod duality;
mod identities;
mod index;
mod polynomial;
mod reductions;

pub use duality::duality;
pub use identities::{binom_relation, product_relation, sum_theorem_identity, Identity};
pub use index::{admissible_indices, IntegerIndex};
pub use polynomial::{PolynomialJson, TermJson, ZetaPolynomial};
pub use reductions::{reduce_double_odd, reduce_n1};
