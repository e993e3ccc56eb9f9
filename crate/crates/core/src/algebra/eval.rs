//! Structural evaluation of expressions and assertions against oracles:
//! finite host graphs (the density proxy), flag hosts, and step graphons.

use num_traits::{One, Zero};

use crate::density::{density, labelled_density};
use crate::error::{Error, Result};
use crate::flag::Flag;
use crate::graph::Graph;
use crate::rational::Rational;

use super::expr::{Assertion, Atom, DensityExpr};
use super::graphon::StepGraphon;

fn fold(e: &DensityExpr, atom: &mut dyn FnMut(&Atom) -> Result<Rational>) -> Result<Rational> {
    Ok(match e {
        DensityExpr::Atom(a) => atom(a)?,
        DensityExpr::Zero => Rational::zero(),
        DensityExpr::One => Rational::one(),
        DensityExpr::Const(r) => r.clone(),
        DensityExpr::Scale(r, x) => r * fold(x, atom)?,
        DensityExpr::Add(a, b) => fold(a, atom)? + fold(b, atom)?,
        DensityExpr::Mul(a, b) => fold(a, atom)? * fold(b, atom)?,
    })
}

fn unlabelled_atom(a: &Atom) -> Result<&Graph> {
    match a {
        Atom::Graph(g) => Ok(g),
        Atom::Flag(f) => Err(Error::TypeMismatch(format!(
            "labelled atom {f} cannot be evaluated on an unlabelled oracle"
        ))),
    }
}

/// Evaluates with every atom `H` read as `p(H, g)`.
pub fn eval_on_host(e: &DensityExpr, g: &Graph) -> Result<Rational> {
    fold(e, &mut |a| Ok(density(unlabelled_atom(a)?, g)))
}

/// Evaluates a τ-labelled expression with every atom `F` read as
/// `p_τ(F, host)` and `1` as `1`.
pub fn eval_on_flag_host(e: &DensityExpr, host: &Flag) -> Result<Rational> {
    fold(e, &mut |a| labelled_density(&a.as_flag(), host))
}

/// Evaluates with every atom `H` read as its induced density in `w`.
pub fn eval_on_graphon(e: &DensityExpr, w: &StepGraphon) -> Result<Rational> {
    fold(e, &mut |a| Ok(w.density(unlabelled_atom(a)?)))
}

/// A semantics for unlabelled assertions.
#[derive(Clone, Debug)]
pub enum Oracle {
    Host(Graph),
    Graphon(StepGraphon),
}

impl Oracle {
    pub fn eval(&self, e: &DensityExpr) -> Result<Rational> {
        match self {
            Oracle::Host(g) => eval_on_host(e, g),
            Oracle::Graphon(w) => eval_on_graphon(e, w),
        }
    }
}

pub fn eval_assertion(a: &Assertion, oracle: &Oracle) -> Result<bool> {
    Ok(match a {
        Assertion::False => false,
        Assertion::True => true,
        Assertion::Geq(x, y) => oracle.eval(x)? >= oracle.eval(y)?,
        Assertion::Not(x) => !eval_assertion(x, oracle)?,
        Assertion::Or(x, y) => eval_assertion(x, oracle)? || eval_assertion(y, oracle)?,
    })
}
