//! Metric coefficient language: parse `G(t, theta)` from text and evaluate it
//! with exact first and second `t`-derivatives.

mod expr;
mod jet;
mod parse;

pub use expr::{BinaryOp, Expr, MetricExpr, UnaryOp, Var};
pub use jet::Jet2;
pub use parse::parse_metric;
