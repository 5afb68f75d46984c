//! Closed forms for sums of products of zeta tails.

mod evaluate;
mod formula;

pub use evaluate::{evaluate_formula, integer_square_closed_form, proposition_kk1, proposition_square};
pub use formula::{
    formula_for_arity, product_expansion, repeated_tail_formula, tail_product_formula, BlockTerm, FormulaJson,
    FormulaTermJson, TailFormula,
};
