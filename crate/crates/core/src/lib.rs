// Negated comparisons deliberately treat NaN as failing the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod curvekit;
pub mod darboux;
pub mod exprjet;
pub mod frenet;
pub mod indicatrix;
pub mod numeric;
pub mod slant;
