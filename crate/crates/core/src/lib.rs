//! Exact flag-algebra calculus over finite simple graphs.
//!
//! Graphs and τ-flags are canonicalised and enumerated up to isomorphism;
//! induced densities are computed exactly; density expressions are parsed,
//! evaluated on finite hosts and step graphons, and flattened to linear
//! forms; the downward operator transfers labelled sums of squares to the
//! unlabelled algebra; and sum-of-squares certificates are verified in
//! exact rational arithmetic.

pub mod algebra;
pub mod basis;
mod canon;
pub mod density;
pub mod downward;
pub mod error;
pub mod flag;
pub mod form;
pub mod graph;
pub mod prover;
pub mod rational;

pub use algebra::{
    eval_assertion, eval_on_flag_host, eval_on_graphon, eval_on_host, parse_assertion, parse_expr, to_linear_form,
    to_linear_form_typed, Assertion, Atom, DensityExpr, Oracle, StepGraphon,
};
pub use density::{
    chain_decompose, density, density_profile, labelled_density, labelled_profile, labelled_split_density,
    split_density,
};
pub use downward::{
    adjointness_sweep, alpha_d, alpha_dagger, check_adjointness, gamma_density, AdjointPair, Downward,
    WeightedGraphMeasure,
};
pub use error::{Error, Result};
pub use flag::{enumerate_flags, is_embedding, q_coefficient, tau_isomorphic, CanonicalFlag, Flag, TypeGraph};
pub use form::{FormFile, LinearForm};
pub use graph::{enumerate_graphs, enumerate_graphs_with_cap, CanonicalGraph, Graph};
pub use prover::{
    expand_block, prove_goodman, prove_mantel, psd_check_exact, search_certificate, verify_certificate, Certificate,
    RationalMatrix, SearchConfig, Verdict,
};
pub use rational::Rational;
