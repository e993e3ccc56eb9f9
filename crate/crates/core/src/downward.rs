//! The downward operator: the adjoint pair `(α_d, γ_d)` between τ-flags and
//! unlabelled graphs.
//!
//! `γ_d(G)` is never built as a measure. Only its integral against a flag,
//! `p_τ(h, γ_d(G))`, is computed, by averaging over the embeddings of τ.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;

use crate::basis::basis;
use crate::density::{density, labelled_density};
use crate::error::{Error, Result};
use crate::flag::{enumerate_flags, is_embedding, q_coefficient, Flag, TypeGraph};
use crate::form::LinearForm;
use crate::graph::{enumerate_graphs, CanonicalGraph, Graph};
use crate::rational::{ratio_u128, Rational};

/// A finitely supported weighting of unlabelled graphs.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WeightedGraphMeasure {
    weights: BTreeMap<CanonicalGraph, Rational>,
}

impl WeightedGraphMeasure {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(g: CanonicalGraph, w: Rational) -> Self {
        let mut m = Self::new();
        m.add(g, w);
        m
    }

    pub fn add(&mut self, g: CanonicalGraph, w: Rational) {
        let entry = self.weights.entry(g).or_insert_with(Rational::zero);
        *entry += w;
        self.weights.retain(|_, w| !w.is_zero());
    }

    pub fn get(&self, g: &CanonicalGraph) -> Rational {
        self.weights.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalGraph, &Rational)> {
        self.weights.iter()
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    /// `Σ_H w_H · p(H, g)`.
    pub fn density_in(&self, g: &Graph) -> Rational {
        self.weights.iter().map(|(h, w)| w * density(h.graph(), g)).sum()
    }
}

/// `α_d(f) = q_f · |f|`.
pub fn alpha_d(f: &Flag) -> Result<WeightedGraphMeasure> {
    Ok(WeightedGraphMeasure::single(f.graph().canonical_form()?, q_coefficient(f)?))
}

/// Linear extension of [`alpha_d`], over the unlabelled basis of the same
/// level.
pub fn alpha_dagger(lf: &LinearForm) -> Result<LinearForm> {
    let level = lf.level();
    let target = basis(&TypeGraph::empty(), level)?;
    let mut coeffs = vec![Rational::zero(); target.len()];
    for (f, c) in lf.terms() {
        if c.is_zero() {
            continue;
        }
        let i = target.index_of(&Flag::unlabelled(f.graph().clone()))?;
        coeffs[i] += c * q_coefficient(&f)?;
    }
    LinearForm::new(TypeGraph::empty(), level, coeffs)
}

/// Every embedding `θ` of τ into `g`.
pub fn embeddings(tau: &TypeGraph, g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n())
        .permutations(tau.size())
        .filter(|theta| is_embedding(tau, theta, g).unwrap_or(false))
        .collect()
}

/// `p_τ(h, γ_d(g))`: `q_(τ,id) · p(τ, g)` times the mean of `p_τ(h, (g, θ))`
/// over the embeddings `θ` of τ into `g`; zero when there are none.
pub fn gamma_density(h: &Flag, g: &Graph) -> Result<Rational> {
    let tau = h.tau();
    let thetas = embeddings(tau, g);
    if thetas.is_empty() {
        return Ok(Rational::zero());
    }
    let weight = q_coefficient(&tau.identity_flag())? * density(tau.graph(), g);
    let mut sum = Rational::zero();
    for theta in &thetas {
        let host = Flag::new(g.clone(), theta.clone(), tau.clone())?;
        sum += labelled_density(h, &host)?;
    }
    Ok(weight * sum * ratio_u128(1, thetas.len() as u128))
}

/// `p(α_d(h), g) = p_τ(h, γ_d(g))`, checked exactly.
pub fn check_adjointness(h: &Flag, g: &Graph) -> Result<bool> {
    Downward.check(h, g)
}

/// A pair of maps between τ-flags and graphs related by
/// `p(α(h), G) = p_τ(h, γ(G))`.
pub trait AdjointPair {
    fn alpha(&self, h: &Flag) -> Result<WeightedGraphMeasure>;

    fn gamma_density(&self, h: &Flag, g: &Graph) -> Result<Rational>;

    fn check(&self, h: &Flag, g: &Graph) -> Result<bool> {
        Ok(self.alpha(h)?.density_in(g) == self.gamma_density(h, g)?)
    }
}

/// The downward pair `(α_d, γ_d)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Downward;

impl AdjointPair for Downward {
    fn alpha(&self, h: &Flag) -> Result<WeightedGraphMeasure> {
        alpha_d(h)
    }

    fn gamma_density(&self, h: &Flag, g: &Graph) -> Result<Rational> {
        gamma_density(h, g)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub types: usize,
    pub flags: usize,
    pub hosts: usize,
    pub cases: usize,
    pub failures: Vec<(Flag, Graph)>,
}

/// Checks adjointness for every flag over every type on at most `max_type`
/// vertices, with at most `max_flag` vertices, against every graph on at
/// most `max_host` vertices.
pub fn adjointness_sweep(max_type: usize, max_flag: usize, max_host: usize) -> Result<SweepReport> {
    let mut types = Vec::new();
    for k in 0..=max_type {
        types.extend(enumerate_graphs(k)?.iter().map(|g| TypeGraph::new(g.graph().clone())));
    }
    let mut flags = Vec::new();
    for tau in &types {
        for n in tau.size()..=max_flag {
            flags.extend(enumerate_flags(tau, n)?.iter().map(|f| f.flag().clone()));
        }
    }
    let mut hosts = Vec::new();
    for m in 0..=max_host {
        hosts.extend(enumerate_graphs(m)?.iter().map(|g| g.graph().clone()));
    }
    let pairs: Vec<(&Flag, &Graph)> = flags.iter().cartesian_product(hosts.iter()).collect();
    let outcomes: Vec<Result<Option<(Flag, Graph)>>> = pairs
        .par_iter()
        .map(|(h, g)| Ok((!check_adjointness(h, g)?).then(|| ((*h).clone(), (*g).clone()))))
        .collect();
    let mut failures = Vec::new();
    for o in outcomes {
        if let Some(fail) = o? {
            failures.push(fail);
        }
    }
    Ok(SweepReport {
        types: types.len(),
        flags: flags.len(),
        hosts: hosts.len(),
        cases: pairs.len(),
        failures,
    })
}

/// All flags `(g, θ)` of type τ on `g`, one per embedding.
pub fn flag_structures(tau: &TypeGraph, g: &Graph) -> Result<Vec<Flag>> {
    if tau.size() > g.n() {
        return Err(Error::SizeViolation(format!(
            "type on {} vertices cannot embed into a graph on {}",
            tau.size(),
            g.n()
        )));
    }
    embeddings(tau, g)
        .into_iter()
        .map(|theta| Flag::new(g.clone(), theta, tau.clone()))
        .collect()
}
