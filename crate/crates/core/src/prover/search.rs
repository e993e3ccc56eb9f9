//! Certificate search: a floating-point SDP proposes Gram matrices, which
//! are rounded to small-denominator rationals and checked exactly.

use nalgebra::DMatrix;
use num_traits::{One, Signed, Zero};

use crate::algebra::to_linear_form;
use crate::basis::basis;
use crate::density::density;
use crate::error::{Error, Result};
use crate::flag::{enumerate_flags, Flag, TypeGraph};
use crate::form::LinearForm;
use crate::graph::Graph;
use crate::rational::{frac, rationalize, to_f64, Rational};

use super::certificate::{AssumptionTerm, Certificate, Direction, SosBlock, Target};
use super::psd::{psd_check_exact, RationalMatrix};
use super::sdp::{solve, SdpConstraint, SdpProblem};
use super::verify::{expand_block, verify_certificate};
use crate::algebra::Assertion;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Largest denominator tried when rounding.
    pub max_denominator: u64,
    /// Newton-step budget of the numeric stage.
    pub max_newton_steps: usize,
    /// How far the numeric optimum may miss the requested bound.
    pub tolerance: f64,
    /// Bound on the trace of each Gram matrix.
    pub trace_bound: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_denominator: 10_000,
            max_newton_steps: 2_000,
            tolerance: 1e-7,
            trace_bound: 1_000.0,
        }
    }
}

/// All τ-flags on `(n + k) / 2` vertices, the largest size whose pairwise
/// products fit at level `n`.
pub fn block_flags(tau: &TypeGraph, n: usize) -> Result<Vec<Flag>> {
    let k = tau.size();
    if n < k {
        return Err(Error::LevelTooSmall { requested: n, minimal: k });
    }
    Ok(enumerate_flags(tau, (n + k) / 2)?.iter().map(|f| f.flag().clone()).collect())
}

/// Matrix `M^H_ij = [H] α†(F_i F_j)` for every basis graph `H`.
fn coefficient_matrices(tau: &TypeGraph, flags: &[Flag], n: usize, len: usize) -> Result<Vec<DMatrix<f64>>> {
    let m = flags.len();
    let mut mats = vec![DMatrix::zeros(m, m); len];
    for i in 0..m {
        for j in i..m {
            let mut e = RationalMatrix::zeros(m);
            e.set(i, j, Rational::one());
            e.set(j, i, Rational::one());
            let form = expand_block(tau, flags, &e, n)?;
            let scale = if i == j { 1.0 } else { 0.5 };
            for (h, c) in form.coeffs().iter().enumerate() {
                mats[h][(i, j)] = scale * to_f64(c);
                mats[h][(j, i)] = scale * to_f64(c);
            }
        }
    }
    Ok(mats)
}

fn contains_forbidden(h: &Graph, forbidden: &[Graph]) -> Option<Graph> {
    forbidden.iter().find(|f| !density(f, h).is_zero()).cloned()
}

/// Finds an exactly verified certificate for `target` at `level` using one
/// SOS block per type, or reports [`Error::NotFound`].
pub fn search_certificate(
    target: &Assertion,
    level: usize,
    types: &[TypeGraph],
    cfg: &SearchConfig,
) -> Result<Certificate> {
    let t = Target::from_assertion(target)?;
    let n = level;
    let e = to_linear_form(&t.expr, n)?;
    let graphs: Vec<Graph> = basis(&TypeGraph::empty(), n)?
        .elems()
        .iter()
        .map(|f| f.graph().clone())
        .collect();
    let free: Vec<usize> = (0..graphs.len())
        .filter(|&h| contains_forbidden(&graphs[h], &t.forbidden).is_none())
        .collect();

    let mut blocks = Vec::new();
    for tau in types {
        let flags = block_flags(tau, n)?;
        let mats = coefficient_matrices(tau, &flags, n, graphs.len())?;
        blocks.push((tau.clone(), flags, mats));
    }
    let sign = match t.direction {
        Direction::AtMost => 1.0,
        Direction::AtLeast => -1.0,
    };
    let problem = SdpProblem {
        sign,
        dims: blocks.iter().map(|b| b.1.len()).collect(),
        constraints: free
            .iter()
            .map(|&h| SdpConstraint {
                e: to_f64(&e.coeffs()[h]),
                mats: blocks.iter().map(|b| b.2[h].clone()).collect(),
            })
            .collect(),
        trace_bound: cfg.trace_bound,
    };
    let sol = solve(&problem, cfg.max_newton_steps, 1e-10)
        .ok_or_else(|| Error::NotFound("the numeric stage did not converge within its budget".into()))?;
    let wanted = to_f64(&t.bound);
    let shortfall = sign * (sol.c - wanted);
    if shortfall > cfg.tolerance {
        return Err(Error::NotFound(format!(
            "numeric optimum {:.9} does not reach the bound {}",
            sol.c, t.bound
        )));
    }

    let mut denominators = vec![10u64, 100, 1_000, 10_000];
    denominators.retain(|&d| d < cfg.max_denominator);
    denominators.push(cfg.max_denominator);
    for den in denominators {
        for bump in [false, true] {
            let mut sos = Vec::new();
            for ((tau, flags, _), q) in blocks.iter().zip(&sol.q) {
                let m = flags.len();
                let mut rows = vec![vec![Rational::zero(); m]; m];
                for i in 0..m {
                    for j in i..m {
                        let mut r = rationalize(q[(i, j)], den);
                        if bump && i == j {
                            r += frac(1, den as i64);
                        }
                        rows[i][j] = r.clone();
                        rows[j][i] = r;
                    }
                }
                let q = RationalMatrix::new(rows)?;
                if !psd_check_exact(&q)? {
                    sos.clear();
                    break;
                }
                sos.push(SosBlock {
                    tau: tau.clone(),
                    flags: flags.clone(),
                    q,
                    lambda: Rational::one(),
                });
            }
            if sos.len() != blocks.len() {
                continue;
            }
            let cert = complete(target, &t, n, &e, &graphs, sos)?;
            if verify_certificate(&cert)?.accepted {
                return Ok(cert);
            }
        }
    }
    Err(Error::NotFound(format!(
        "no rounding up to denominator {} verified",
        cfg.max_denominator
    )))
}

/// Fills slack and assumption multipliers so that the residual vanishes
/// wherever it can.
fn complete(
    target: &Assertion,
    t: &Target,
    n: usize, e: &LinearForm, graphs: &[Graph], blocks: Vec<SosBlock>) -> Result<Certificate> {
    let mut sos = LinearForm::zero(&TypeGraph::empty(), n)?;
    for b in &blocks {
        sos = sos.add(&expand_block(&b.tau, &b.flags, &b.q, n)?.scale(&b.lambda))?;
    }
    let c1 = LinearForm::ones(&TypeGraph::empty(), n)?.scale(&t.bound);
    let gap = match t.direction {
        Direction::AtMost => c1.sub(e)?.sub(&sos)?,
        Direction::AtLeast => e.sub(&c1)?.sub(&sos)?,
    };
    let mut slack = Vec::new();
    let mut assumptions: Vec<AssumptionTerm> = t
        .forbidden
        .iter()
        .map(|f| AssumptionTerm {
            forbidden: f.clone(),
            mu: Vec::new(),
        })
        .collect();
    for (h, r) in gap.coeffs().iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        match contains_forbidden(&graphs[h], &t.forbidden) {
            Some(f) => {
                let term = assumptions.iter_mut().find(|a| a.forbidden == f).unwrap();
                term.mu.push((graphs[h].clone(), -r));
            }
            None if r.is_positive() => slack.push((graphs[h].clone(), r.clone())),
            None => {}
        }
    }
    assumptions.retain(|a| !a.mu.is_empty());
    Ok(Certificate {
        target: target.clone(),
        level: n,
        blocks,
        slack,
        assumptions,
    })
}
