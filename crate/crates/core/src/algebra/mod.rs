//! Density expressions, assertions, their parser, evaluation oracles and
//! flattening into linear forms.

mod eval;
mod expr;
mod flatten;
mod graphon;
mod parser;

pub use eval::{eval_assertion, eval_on_flag_host, eval_on_graphon, eval_on_host, Oracle};
pub use expr::{Assertion, Atom, DensityExpr};
pub use flatten::{minimal_level, to_linear_form, to_linear_form_typed};
pub use graphon::StepGraphon;
pub use parser::{parse_assertion, parse_expr};
