//! Exact arithmetic in the coefficient field Q(q,t).

mod poly;
mod scalar;

pub use poly::IntPoly2;
pub use scalar::{q_integer, qt_arith, qt_int, qt_substitute, ArithKind, QtBase, QtScalar, UniPoly};
