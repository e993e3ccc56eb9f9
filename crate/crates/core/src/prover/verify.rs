//! Exact certificate verification.
//!
//! For a target `E ≤ c` the verifier forms
//! `c·𝟙 − E − Σ λ·α†(Σ Q_ij F_i F_j) − Σ a_H·H + Σ μ_H·H`
//! over the level-`n` basis (mirrored for `E ≥ c`) and accepts when every
//! coefficient is nonnegative.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::algebra::{to_linear_form, Atom};
use crate::basis::basis;
use crate::density::{chain_decompose, density};
use crate::downward::alpha_dagger;
use crate::error::{Error, Result};
use crate::flag::{Flag, TypeGraph};
use crate::form::LinearForm;
use crate::graph::Graph;
use crate::rational::Rational;

use super::certificate::{Certificate, Direction, SosBlock, Target};
use super::psd::{psd_check_exact, RationalMatrix};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StepKind {
    Decomposition,
    Square,
    Flatten,
    Downward,
    InequalityAddition,
    AssumptionErasure,
    NonNegativity,
    SumToOne,
    Conclusion,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::Decomposition => "decomposition",
            StepKind::Square => "square",
            StepKind::Flatten => "flatten",
            StepKind::Downward => "downward",
            StepKind::InequalityAddition => "inequality addition",
            StepKind::AssumptionErasure => "assumption erasure",
            StepKind::NonNegativity => "non-negativity padding",
            StepKind::SumToOne => "sum-to-one",
            StepKind::Conclusion => "conclusion",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraceStep {
    pub kind: StepKind,
    pub text: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub accepted: bool,
    pub target: Target,
    pub residual: LinearForm,
    /// Basis graphs whose residual coefficient is negative.
    pub negative: Vec<(Graph, Rational)>,
    pub trace: Vec<TraceStep>,
}

impl Verdict {
    pub fn trace_text(&self) -> String {
        self.trace.iter().map(|s| format!("[{}] {}\n", s.kind, s.text)).collect()
    }
}

/// `Σ Q_ij F_i F_j` flattened at level `n` in the τ-labelled algebra.
pub fn square_form(tau: &TypeGraph, flags: &[Flag], q: &RationalMatrix, n: usize) -> Result<LinearForm> {
    if flags.len() != q.dim() {
        return Err(Error::InvalidCertificate(format!(
            "{} flags but a {}x{} matrix",
            flags.len(),
            q.dim(),
            q.dim()
        )));
    }
    let k = tau.size();
    let mut size = None;
    for f in flags {
        if f.tau() != tau {
            return Err(Error::TypeMismatch(format!("flag {f} is not a {tau}-flag")));
        }
        if *size.get_or_insert(f.n()) != f.n() {
            return Err(Error::InvalidCertificate("block flags must have a common size".into()));
        }
    }
    let s = size.unwrap_or(k);
    let minimal = 2 * s - k;
    if n < minimal {
        return Err(Error::LevelTooSmall { requested: n, minimal });
    }
    let units = flags.iter().map(LinearForm::from_flag).collect::<Result<Vec<_>>>()?;
    let mut acc = LinearForm::zero(tau, minimal)?;
    for i in 0..flags.len() {
        for j in 0..flags.len() {
            let c = q.get(i, j);
            if !c.is_zero() {
                acc = acc.add(&units[i].mul(&units[j])?.scale(c))?;
            }
        }
    }
    acc.lift(n)
}

/// `α†(Σ Q_ij F_i F_j)` at level `n`: the unlabelled image of a labelled
/// sum of squares.
pub fn expand_block(tau: &TypeGraph, flags: &[Flag], q: &RationalMatrix, n: usize) -> Result<LinearForm> {
    alpha_dagger(&square_form(tau, flags, q, n)?)
}

fn quadratic_text(flags: &[Flag], q: &RationalMatrix) -> String {
    let mut terms = Vec::new();
    for i in 0..flags.len() {
        for j in 0..flags.len() {
            if !q.get(i, j).is_zero() {
                terms.push(format!("{} * {} * {}", q.get(i, j), flags[i], flags[j]));
            }
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn unit_index(level: usize, g: &Graph) -> Result<usize> {
    if g.n() != level {
        return Err(Error::LevelMismatch(format!(
            "{g} is not a graph of the level-{level} basis"
        )));
    }
    basis(&TypeGraph::empty(), level)?.index_of(&Flag::unlabelled(g.clone()))
}

fn check_block(i: usize, b: &SosBlock) -> Result<()> {
    if b.lambda.is_negative() {
        return Err(Error::InvalidCertificate(format!("block {}: lambda = {} is negative", i + 1, b.lambda)));
    }
    if !psd_check_exact(&b.q)? {
        return Err(Error::InvalidCertificate(format!("block {}: Q is not positive semidefinite", i + 1)));
    }
    Ok(())
}

/// Replays a certificate in exact arithmetic.
pub fn verify_certificate(cert: &Certificate) -> Result<Verdict> {
    let target = Target::from_assertion(&cert.target)?;
    let n = cert.level;
    let sign = match target.direction {
        Direction::AtMost => Rational::from_integer(1.into()),
        Direction::AtLeast => Rational::from_integer((-1).into()),
    };
    let mut trace = Vec::new();
    let mut step = |kind, text: String| trace.push(TraceStep { kind, text });

    let e = to_linear_form(&target.expr, n)?;
    for a in target.expr.atoms() {
        if let Atom::Graph(g) = a {
            step(StepKind::Decomposition, format!("{g} = {}", plain_terms(&chain_decompose(g, n)?)));
        }
    }
    if !matches!(target.expr, crate::algebra::DensityExpr::Atom(_)) {
        step(StepKind::Decomposition, format!("{} = {}", target.expr, plain_terms(&e)));
    }

    // running upper (or lower) estimate of E
    let mut cur = e.clone();
    for (i, b) in cert.blocks.iter().enumerate() {
        check_block(i, b)?;
        step(StepKind::Square, format!("{} >= 0 in the {}-labelled algebra", quadratic_text(&b.flags, &b.q), b.tau));
        let labelled = square_form(&b.tau, &b.flags, &b.q, n)?;
        step(StepKind::Flatten, format!("= {labelled}"));
        let down = alpha_dagger(&labelled)?;
        step(StepKind::Downward, format!("{down} >= 0"));
        cur = cur.add(&down.scale(&(&sign * &b.lambda)))?;
        let rel = if sign.is_positive() { "<=" } else { ">=" };
        step(
            StepKind::InequalityAddition,
            format!("{} {rel} {} + {} * ({down}) = {cur}", target.expr, plain_terms(&e), &sign * &b.lambda),
        );
    }

    let mut mu = LinearForm::zero(&TypeGraph::empty(), n)?;
    for term in &cert.assumptions {
        if !target.forbidden.contains(&term.forbidden)
            && !target.forbidden.iter().any(|f| f.is_isomorphic(&term.forbidden))
        {
            return Err(Error::InvalidCertificate(format!(
                "{} = 0 is not an assumption of the target",
                term.forbidden
            )));
        }
        for (h, m) in &term.mu {
            let i = unit_index(n, h)?;
            if density(&term.forbidden, h).is_zero() {
                return Err(Error::InvalidCertificate(format!(
                    "multiplier on {h}, which does not contain {}",
                    term.forbidden
                )));
            }
            let mut coeffs = mu.coeffs().to_vec();
            coeffs[i] += m;
            mu = LinearForm::new(TypeGraph::empty(), n, coeffs)?;
        }
    }
    if !mu.is_zero() {
        cur = cur.sub(&mu.scale(&sign))?;
        let names: Vec<String> = cert.assumptions.iter().map(|a| format!("{} = 0", a.forbidden)).collect();
        step(StepKind::AssumptionErasure, format!("= {cur} since {}", names.join(" and ")));
    }

    let mut slack = vec![Rational::zero(); e.coeffs().len()];
    for (h, a) in &cert.slack {
        if a.is_negative() {
            return Err(Error::InvalidCertificate(format!("slack on {h} is negative ({a})")));
        }
        slack[unit_index(n, h)?] += a;
    }
    let slack = LinearForm::new(TypeGraph::empty(), n, slack)?;

    let ones = LinearForm::ones(&TypeGraph::empty(), n)?;
    let c1 = ones.scale(&target.bound);
    // c𝟙 - E - Σλ·SOS - a + μ, or its mirror
    let residual = c1.sub(&cur)?.scale(&sign).sub(&slack)?;
    let negative: Vec<(Graph, Rational)> = residual
        .terms()
        .filter(|(_, r)| r.is_negative())
        .map(|(f, r)| (f.graph().clone(), r.clone()))
        .collect();
    let accepted = negative.is_empty();

    let rel = if sign.is_positive() { "<=" } else { ">=" };
    step(
        StepKind::NonNegativity,
        format!("{rel} {} using slack {} and residual {}", plain_terms(&c1), plain_terms(&slack), plain_terms(&residual)),
    );
    step(
        StepKind::SumToOne,
        format!("= {} * ({}) = {} * 1 = {}", target.bound, plain_terms(&ones), target.bound, target.bound),
    );
    if accepted {
        step(StepKind::Conclusion, format!("{target} holds"));
    } else {
        let neg: Vec<String> = negative.iter().map(|(g, r)| format!("{g}: {r}")).collect();
        step(StepKind::Conclusion, format!("rejected: negative residual at {}", neg.join(", ")));
    }
    Ok(Verdict {
        accepted,
        target,
        residual,
        negative,
        trace,
    })
}

/// Every coefficient, zeros included, in basis order.
fn plain_terms(lf: &LinearForm) -> String {
    let text: Vec<String> = lf.terms().map(|(f, c)| format!("{c} * {}", f.graph())).collect();
    if text.is_empty() {
        "0".into()
    } else {
        text.join(" + ")
    }
}
