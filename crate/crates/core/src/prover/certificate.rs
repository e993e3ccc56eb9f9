//! Sum-of-squares certificates, their JSON form, and supported targets.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_assertion, Assertion, Atom, DensityExpr};
use crate::error::{Error, Result};
use crate::flag::{Flag, TypeGraph};
use crate::graph::Graph;
use crate::rational::{parse_rational, Rational};

use super::psd::RationalMatrix;

/// A PSD quadratic form over τ-flags, `λ · Σ Q_ij F_i F_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SosBlock {
    pub tau: TypeGraph,
    pub flags: Vec<Flag>,
    pub q: RationalMatrix,
    pub lambda: Rational,
}

/// Multipliers `μ_H` on level-`n` graphs containing the forbidden `F`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AssumptionTerm {
    pub forbidden: Graph,
    pub mu: Vec<(Graph, Rational)>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    pub target: Assertion,
    pub level: usize,
    pub blocks: Vec<SosBlock>,
    pub slack: Vec<(Graph, Rational)>,
    pub assumptions: Vec<AssumptionTerm>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    AtMost,
    AtLeast,
}

/// `(∧ F = 0) ⟹ E ≤ c` or `(∧ F = 0) ⟹ E ≥ c`, with `E` unlabelled and
/// `c` a constant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Target {
    pub forbidden: Vec<Graph>,
    pub expr: DensityExpr,
    pub direction: Direction,
    pub bound: Rational,
}

/// Value of an atom-free expression.
fn constant_value(e: &DensityExpr) -> Option<Rational> {
    match e {
        DensityExpr::Atom(_) => None,
        DensityExpr::Zero => Some(Rational::zero()),
        DensityExpr::One => Some(Rational::one()),
        DensityExpr::Const(r) => Some(r.clone()),
        DensityExpr::Scale(r, x) => Some(r * constant_value(x)?),
        DensityExpr::Add(a, b) => Some(constant_value(a)? + constant_value(b)?),
        DensityExpr::Mul(a, b) => Some(constant_value(a)? * constant_value(b)?),
    }
}

fn forbidden_graph(a: &Assertion) -> Option<Graph> {
    let (x, y) = a.as_eq()?;
    let (atom, zero) = match (x, y) {
        (DensityExpr::Atom(Atom::Graph(g)), z) | (z, DensityExpr::Atom(Atom::Graph(g))) => (g, z),
        _ => return None,
    };
    constant_value(zero).filter(Zero::is_zero).map(|_| atom.clone())
}

fn collect_forbidden(a: &Assertion, out: &mut Vec<Graph>) -> Result<()> {
    if let Some(g) = forbidden_graph(a) {
        out.push(g);
        return Ok(());
    }
    match a.as_and() {
        Some((x, y)) => {
            collect_forbidden(x, out)?;
            collect_forbidden(y, out)
        }
        None => Err(Error::UnsupportedTarget(format!("assumption `{a}` is not a conjunction of `F = 0`"))),
    }
}

impl Target {
    pub fn from_assertion(a: &Assertion) -> Result<Target> {
        a.check_types()?;
        let (forbidden, body) = match a.as_implies() {
            Some((hyp, body)) => {
                let mut fs = Vec::new();
                collect_forbidden(hyp, &mut fs)?;
                (fs, body)
            }
            None => (Vec::new(), a),
        };
        let Assertion::Geq(lhs, rhs) = body else {
            return Err(Error::UnsupportedTarget(format!(
                "`{body}` is not of the form `E <= c` or `E >= c`"
            )));
        };
        let (expr, direction, bound) = match (constant_value(lhs), constant_value(rhs)) {
            (None, Some(c)) => (lhs.clone(), Direction::AtLeast, c),
            (Some(c), None) => (rhs.clone(), Direction::AtMost, c),
            _ => {
                return Err(Error::UnsupportedTarget(format!(
                    "exactly one side of `{body}` must be a constant"
                )))
            }
        };
        if !expr.is_unlabelled()? {
            return Err(Error::UnsupportedTarget("target expressions must be unlabelled".into()));
        }
        Ok(Target {
            forbidden,
            expr,
            direction,
            bound,
        })
    }

    pub fn to_assertion(&self) -> Assertion {
        let c = DensityExpr::constant(self.bound.clone());
        let body = match self.direction {
            Direction::AtMost => Assertion::leq(self.expr.clone(), c),
            Direction::AtLeast => Assertion::geq(self.expr.clone(), c),
        };
        let mut hyp: Option<Assertion> = None;
        for f in &self.forbidden {
            let eq = Assertion::eq(DensityExpr::graph(f.clone()), DensityExpr::Zero);
            hyp = Some(match hyp {
                None => eq,
                Some(h) => Assertion::and(h, eq),
            });
        }
        match hyp {
            None => body,
            Some(h) => Assertion::implies(h, body),
        }
    }

    /// The same target with another constant.
    pub fn with_bound(&self, bound: Rational) -> Target {
        Target {
            bound,
            ..self.clone()
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_assertion().fmt(f)
    }
}

#[derive(Serialize, Deserialize)]
struct BlockFile {
    #[serde(rename = "type")]
    tau: String,
    flags: Vec<String>,
    #[serde(rename = "Q")]
    q: Vec<Vec<String>>,
    lambda: String,
}

#[derive(Serialize, Deserialize)]
struct AssumptionFile {
    forbidden: String,
    mu: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct CertificateFile {
    target: String,
    level: usize,
    blocks: Vec<BlockFile>,
    #[serde(default)]
    slack: BTreeMap<String, String>,
    #[serde(default)]
    assumptions: Vec<AssumptionFile>,
}

fn weights_to_file(w: &[(Graph, Rational)]) -> BTreeMap<String, String> {
    w.iter().map(|(g, r)| (g.to_string(), r.to_string())).collect()
}

fn weights_from_file(w: &BTreeMap<String, String>) -> Result<Vec<(Graph, Rational)>> {
    w.iter().map(|(g, r)| Ok((g.parse()?, parse_rational(r)?))).collect()
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let file = CertificateFile {
            target: self.target.to_string(),
            level: self.level,
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockFile {
                    tau: b.tau.to_string(),
                    flags: b.flags.iter().map(|f| f.to_string()).collect(),
                    q: b.q.to_strings(),
                    lambda: b.lambda.to_string(),
                })
                .collect(),
            slack: weights_to_file(&self.slack),
            assumptions: self
                .assumptions
                .iter()
                .map(|a| AssumptionFile {
                    forbidden: a.forbidden.to_string(),
                    mu: weights_to_file(&a.mu),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("certificate serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CertificateFile = serde_json::from_str(text)?;
        let blocks = file
            .blocks
            .iter()
            .map(|b| {
                let tau: TypeGraph = b.tau.parse()?;
                let flags = b.flags.iter().map(|f| f.parse()).collect::<Result<Vec<Flag>>>()?;
                Ok(SosBlock {
                    tau,
                    flags,
                    q: RationalMatrix::parse(&b.q)?,
                    lambda: parse_rational(&b.lambda)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let assumptions = file
            .assumptions
            .iter()
            .map(|a| {
                Ok(AssumptionTerm {
                    forbidden: a.forbidden.parse()?,
                    mu: weights_from_file(&a.mu)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Certificate {
            target: parse_assertion(&file.target)?,
            level: file.level,
            blocks,
            slack: weights_from_file(&file.slack)?,
            assumptions,
        })
    }
}
