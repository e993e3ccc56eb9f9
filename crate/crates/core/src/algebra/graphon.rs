//! Step graphons: finitely many parts with rational weights and a symmetric
//! matrix of edge probabilities. Induced densities are exact rationals.

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{factorial, parse_rational, ratio_u128, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StepGraphon {
    weights: Vec<Rational>,
    matrix: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct GraphonFile {
    weights: Vec<String>,
    matrix: Vec<Vec<String>>,
}

impl StepGraphon {
    pub fn new(weights: Vec<Rational>, matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let r = weights.len();
        if r == 0 {
            return Err(Error::InvalidGraphon("at least one part is required".into()));
        }
        if weights.iter().any(|w| *w <= Rational::zero()) {
            return Err(Error::InvalidGraphon("part weights must be positive".into()));
        }
        if weights.iter().sum::<Rational>() != Rational::one() {
            return Err(Error::InvalidGraphon("part weights must sum to 1".into()));
        }
        if matrix.len() != r || matrix.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidGraphon(format!("matrix must be {r}x{r}")));
        }
        for i in 0..r {
            for j in 0..r {
                let p = &matrix[i][j];
                if *p < Rational::zero() || *p > Rational::one() {
                    return Err(Error::InvalidGraphon(format!("entry ({}, {}) = {p} is outside [0, 1]", i + 1, j + 1)));
                }
                if matrix[j][i] != *p {
                    return Err(Error::InvalidGraphon("matrix must be symmetric".into()));
                }
            }
        }
        Ok(StepGraphon { weights, matrix })
    }

    /// One part with edge probability `p`.
    pub fn constant(p: Rational) -> Result<Self> {
        StepGraphon::new(vec![Rational::one()], vec![vec![p]])
    }

    /// Two equal parts, complete between them and empty inside.
    pub fn balanced_bipartite() -> Self {
        let (z, o) = (Rational::zero(), Rational::one());
        let half = ratio_u128(1, 2);
        StepGraphon::new(vec![half.clone(), half], vec![vec![z.clone(), o.clone()], vec![o, z]])
            .expect("valid graphon")
    }

    pub fn parts(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    /// Induced density of `h`: `v(h)!/|Aut h|` times the probability that
    /// `v(h)` labelled samples span exactly the labelled copy `h`.
    pub fn density(&self, h: &Graph) -> Rational {
        let n = h.n();
        let r = self.parts();
        let mut total = Rational::zero();
        for parts in (0..n).map(|_| 0..r).multi_cartesian_product() {
            let mut term: Rational = parts.iter().map(|&p| &self.weights[p]).product();
            for (u, v) in (0..n).tuple_combinations() {
                let p = &self.matrix[parts[u]][parts[v]];
                if h.has_edge(u, v) {
                    term *= p;
                } else {
                    term *= Rational::one() - p;
                }
                if term.is_zero() {
                    break;
                }
            }
            total += term;
        }
        if n == 0 {
            // the product over zero samples is the single empty assignment
            total = Rational::one();
        }
        total * ratio_u128(factorial(n), h.automorphism_count() as u128)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphonFile = serde_json::from_str(text)?;
        let weights = file.weights.iter().map(|w| parse_rational(w)).collect::<Result<_>>()?;
        let matrix = file
            .matrix
            .iter()
            .map(|row| row.iter().map(|p| parse_rational(p)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        StepGraphon::new(weights, matrix)
    }

    pub fn to_json(&self) -> String {
        let file = GraphonFile {
            weights: self.weights.iter().map(|w| w.to_string()).collect(),
            matrix: self
                .matrix
                .iter()
                .map(|row| row.iter().map(|p| p.to_string()).collect())
                .collect(),
        };
        serde_json::to_string(&file).expect("graphon serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn constant_graphon_densities() {
        let w = StepGraphon::constant(frac(1, 2)).unwrap();
        assert_eq!(w.density(&Graph::complete(3)), frac(1, 8));
        assert_eq!(w.density(&Graph::edgeless(3)), frac(1, 8));
        assert_eq!(w.density(&Graph::path(3)), frac(3, 8));
        assert_eq!(w.density(&Graph::empty()), int(1));
    }

    #[test]
    fn bipartite_graphon_densities() {
        let w = StepGraphon::balanced_bipartite();
        assert_eq!(w.density(&Graph::complete(2)), frac(1, 2));
        assert_eq!(w.density(&Graph::complete(3)), int(0));
    }

    #[test]
    fn validation() {
        assert!(StepGraphon::new(vec![frac(1, 2)], vec![vec![int(0)]]).is_err());
        assert!(StepGraphon::constant(frac(3, 2)).is_err());
        assert!(StepGraphon::new(
            vec![frac(1, 2), frac(1, 2)],
            vec![vec![int(0), int(1)], vec![int(0), int(0)]]
        )
        .is_err());
        let json = r#"{ "weights": ["1/2","1/2"], "matrix": [["0","1"],["1","0"]] }"#;
        assert_eq!(StepGraphon::from_json(json).unwrap(), StepGraphon::balanced_bipartite());
        let w = StepGraphon::balanced_bipartite();
        assert_eq!(StepGraphon::from_json(&w.to_json()).unwrap(), w);
    }
}
