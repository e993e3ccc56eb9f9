//! The two worked certificates: Mantel's bound `K₃ = 0 ⟹ K₂ ≤ 1/2` and
//! Goodman's bound `K₃ + I₃ ≥ 1/4`, both from the single square
//! `(LI₂ − LE₂)²` over the one-vertex type at level 3.

use crate::algebra::parse_assertion;
use crate::flag::{Flag, TypeGraph};
use crate::graph::Graph;
use crate::rational::{frac, int};

use super::certificate::{AssumptionTerm, Certificate, SosBlock};
use super::psd::RationalMatrix;
use super::verify::{verify_certificate, Verdict};

fn square_block(lambda: crate::rational::Rational) -> SosBlock {
    let flag = |s: &str| -> Flag { s.parse().expect("valid flag literal") };
    SosBlock {
        tau: TypeGraph::vertex(),
        flags: vec![flag("f:2:{}|t:1:{}|theta:1"), flag("f:2:{12}|t:1:{}|theta:1")],
        q: RationalMatrix::new(vec![vec![int(1), int(-1)], vec![int(-1), int(1)]]).expect("square"),
        lambda,
    }
}

fn graph(s: &str) -> Graph {
    s.parse().expect("valid graph literal")
}

pub fn mantel_certificate() -> Certificate {
    Certificate {
        target: parse_assertion("g:3:{12,13,23} = 0 => g:2:{12} <= 1/2").expect("valid target"),
        level: 3,
        blocks: vec![square_block(frac(1, 2))],
        slack: vec![(graph("g:3:{12}"), frac(1, 3))],
        assumptions: vec![AssumptionTerm {
            forbidden: Graph::complete(3),
            mu: vec![(Graph::complete(3), int(1))],
        }],
    }
}

pub fn goodman_certificate() -> Certificate {
    Certificate {
        target: parse_assertion("g:3:{12,13,23} + g:3:{} >= 1/4").expect("valid target"),
        level: 3,
        blocks: vec![square_block(frac(3, 4))],
        slack: Vec::new(),
        assumptions: Vec::new(),
    }
}

pub fn prove_mantel() -> Verdict {
    verify_certificate(&mantel_certificate()).expect("built-in certificate is well formed")
}

pub fn prove_goodman() -> Verdict {
    verify_certificate(&goodman_certificate()).expect("built-in certificate is well formed")
}
