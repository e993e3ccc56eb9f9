//! Flattening of density expressions into linear forms over a level basis.
//!
//! Products are eliminated innermost-out, left operand before right, each
//! at the smallest level the product identity allows (`a + b - k`); sums
//! lift the lower operand; `1` becomes the type itself (`∅` when unlabelled).

use crate::error::{Error, Result};
use crate::flag::TypeGraph;
use crate::form::LinearForm;

use super::expr::DensityExpr;

/// The smallest level at which `e` can be flattened over a type of size `k`.
pub fn minimal_level(e: &DensityExpr, k: usize) -> usize {
    match e {
        DensityExpr::Atom(a) => a.n(),
        DensityExpr::Zero | DensityExpr::One | DensityExpr::Const(_) => k,
        DensityExpr::Scale(_, x) => minimal_level(x, k),
        DensityExpr::Add(a, b) => minimal_level(a, k).max(minimal_level(b, k)),
        DensityExpr::Mul(a, b) => minimal_level(a, k) + minimal_level(b, k) - k,
    }
}

fn flatten(e: &DensityExpr, tau: &TypeGraph) -> Result<LinearForm> {
    match e {
        DensityExpr::Atom(a) => {
            let f = a.as_flag();
            if f.tau() != tau {
                return Err(Error::TypeMismatch(format!("atom {a} is not a {tau}-flag")));
            }
            LinearForm::from_flag(&f)
        }
        DensityExpr::Zero => LinearForm::zero(tau, tau.size()),
        DensityExpr::One => LinearForm::ones(tau, tau.size()),
        DensityExpr::Const(r) => Ok(LinearForm::ones(tau, tau.size())?.scale(r)),
        DensityExpr::Scale(r, x) => Ok(flatten(x, tau)?.scale(r)),
        DensityExpr::Add(a, b) => flatten(a, tau)?.add(&flatten(b, tau)?),
        DensityExpr::Mul(a, b) => flatten(a, tau)?.mul(&flatten(b, tau)?),
    }
}

/// Flattens `e` at level `n` over the type of its atoms (unlabelled when it
/// has none).
pub fn to_linear_form(e: &DensityExpr, n: usize) -> Result<LinearForm> {
    let tau = e.expr_type()?.unwrap_or_else(TypeGraph::empty);
    to_linear_form_typed(e, &tau, n)
}

/// Flattens `e` over the given type; needed for atom-free expressions such
/// as `1` in a labelled algebra.
pub fn to_linear_form_typed(e: &DensityExpr, tau: &TypeGraph, n: usize) -> Result<LinearForm> {
    if let Some(t) = e.expr_type()? {
        if &t != tau {
            return Err(Error::TypeMismatch(format!("expression over {t} flattened over {tau}")));
        }
    }
    let minimal = minimal_level(e, tau.size());
    if n < minimal {
        return Err(Error::LevelTooSmall { requested: n, minimal });
    }
    flatten(e, tau)?.lift(n)
}
