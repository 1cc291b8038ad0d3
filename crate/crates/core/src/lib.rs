// Negated comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classify;
pub mod cli;
pub mod document;
pub mod error;
pub mod gallery;
pub mod hammerstein;
pub mod linalg;
pub mod qop;
pub mod quadrature;
pub mod rank1;
pub mod solver;
