//! Linear forms: rational coefficient vectors over a level-`n` basis.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Atom, DensityExpr};
use crate::basis::{basis, lift_table, product_table, Basis};
use crate::error::{Error, Result};
use crate::flag::{Flag, TypeGraph};
use crate::rational::{parse_rational, Rational};

/// `Σ c_F · F` over the τ-flags `F` on `level` vertices. The empty type
/// gives ordinary unlabelled forms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearForm {
    tau: TypeGraph,
    level: usize,
    coeffs: Vec<Rational>,
}

impl LinearForm {
    pub fn new(tau: TypeGraph, level: usize, coeffs: Vec<Rational>) -> Result<Self> {
        let b = basis(&tau, level)?;
        if b.len() != coeffs.len() {
            return Err(Error::LevelMismatch(format!(
                "{} coefficients given for a basis of size {}",
                coeffs.len(),
                b.len()
            )));
        }
        Ok(LinearForm { tau, level, coeffs })
    }

    pub fn zero(tau: &TypeGraph, level: usize) -> Result<Self> {
        let len = basis(tau, level)?.len();
        Ok(LinearForm {
            tau: tau.clone(),
            level,
            coeffs: vec![Rational::zero(); len],
        })
    }

    /// The all-ones form; equal to `1` by the sum-to-one identity.
    pub fn ones(tau: &TypeGraph, level: usize) -> Result<Self> {
        let len = basis(tau, level)?.len();
        Ok(LinearForm {
            tau: tau.clone(),
            level,
            coeffs: vec![Rational::one(); len],
        })
    }

    pub fn unit(tau: &TypeGraph, level: usize, index: usize) -> Result<Self> {
        let mut f = LinearForm::zero(tau, level)?;
        f.coeffs[index] = Rational::one();
        Ok(f)
    }

    /// The single-flag form `1 · f` at level `v(f)`.
    pub fn from_flag(f: &Flag) -> Result<Self> {
        let b = basis(f.tau(), f.n())?;
        LinearForm::unit(f.tau(), f.n(), b.index_of(f)?)
    }

    pub fn tau(&self) -> &TypeGraph {
        &self.tau
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_unlabelled(&self) -> bool {
        self.tau.size() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn basis(&self) -> Arc<Basis> {
        basis(&self.tau, self.level).expect("basis validated at construction")
    }

    pub fn coefficient_of(&self, f: &Flag) -> Result<Rational> {
        Ok(self.coeffs[self.basis().index_of(f)?].clone())
    }

    /// `(basis element, coefficient)` pairs in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (Flag, &Rational)> + '_ {
        let b = self.basis();
        let flags: Vec<Flag> = b.elems().iter().map(|f| f.flag().clone()).collect();
        flags.into_iter().zip(self.coeffs.iter())
    }

    fn check_type(&self, other: &LinearForm) -> Result<()> {
        if self.tau != other.tau {
            return Err(Error::TypeMismatch(format!("forms over {} and {}", self.tau, other.tau)));
        }
        Ok(())
    }

    pub fn scale(&self, r: &Rational) -> LinearForm {
        LinearForm {
            tau: self.tau.clone(),
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn neg(&self) -> LinearForm {
        self.scale(&-Rational::one())
    }

    /// Sum, lifting the lower-level operand first.
    pub fn add(&self, other: &LinearForm) -> Result<LinearForm> {
        self.check_type(other)?;
        let level = self.level.max(other.level);
        let (a, b) = (self.lift(level)?, other.lift(level)?);
        Ok(LinearForm {
            tau: self.tau.clone(),
            level,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn sub(&self, other: &LinearForm) -> Result<LinearForm> {
        self.add(&other.neg())
    }

    /// Re-expresses the form at level `n` via the chain rule.
    pub fn lift(&self, n: usize) -> Result<LinearForm> {
        if n == self.level {
            return Ok(self.clone());
        }
        if n < self.level {
            return Err(Error::LevelTooSmall {
                requested: n,
                minimal: self.level,
            });
        }
        let table = lift_table(&self.tau, self.level, n)?;
        let coeffs = table
            .iter()
            .map(|row| row.iter().map(|(i, p)| &self.coeffs[*i] * p).sum())
            .collect();
        Ok(LinearForm {
            tau: self.tau.clone(),
            level: n,
            coeffs,
        })
    }

    /// Product at the smallest level the elimination identity allows,
    /// `a + b - k`.
    pub fn mul(&self, other: &LinearForm) -> Result<LinearForm> {
        self.check_type(other)?;
        self.mul_at(other, self.level + other.level - self.tau.size())
    }

    /// Product expressed directly at level `n`.
    pub fn mul_at(&self, other: &LinearForm, n: usize) -> Result<LinearForm> {
        self.check_type(other)?;
        let k = self.tau.size();
        let minimal = self.level + other.level - k;
        if n < minimal {
            return Err(Error::LevelTooSmall { requested: n, minimal });
        }
        let table = product_table(&self.tau, self.level, other.level, n)?;
        let coeffs = table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|((i, j), r)| &self.coeffs[*i] * &other.coeffs[*j] * r)
                    .sum()
            })
            .collect();
        Ok(LinearForm {
            tau: self.tau.clone(),
            level: n,
            coeffs,
        })
    }

    /// The form read back as a density expression `Σ c_F · F`.
    pub fn to_expr(&self) -> DensityExpr {
        let mut out: Option<DensityExpr> = None;
        for (f, c) in self.terms() {
            let atom = if self.is_unlabelled() {
                Atom::Graph(f.graph().clone())
            } else {
                Atom::Flag(f)
            };
            let term = DensityExpr::Scale(c.clone(), Box::new(DensityExpr::Atom(atom)));
            out = Some(match out {
                None => term,
                Some(acc) => DensityExpr::Add(Box::new(acc), Box::new(term)),
            });
        }
        out.unwrap_or(DensityExpr::Zero)
    }

    pub fn to_file(&self) -> FormFile {
        FormFile {
            level: self.level,
            tau: self.tau.to_string(),
            basis: self.terms().map(|(f, _)| self.atom_text(&f)).collect(),
            coefficients: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }

    fn atom_text(&self, f: &Flag) -> String {
        if self.is_unlabelled() {
            f.graph().to_string()
        } else {
            f.to_string()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("form serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: FormFile = serde_json::from_str(text)?;
        LinearForm::from_file(&file)
    }

    /// Validates that `basis` lists the deterministic basis for
    /// `(type, level)` up to isomorphism, in order.
    pub fn from_file(file: &FormFile) -> Result<Self> {
        let tau: TypeGraph = file.tau.parse()?;
        let b = basis(&tau, file.level)?;
        if file.basis.len() != b.len() || file.coefficients.len() != b.len() {
            return Err(Error::LevelMismatch(format!(
                "expected {} basis entries at level {}",
                b.len(),
                file.level
            )));
        }
        for (i, text) in file.basis.iter().enumerate() {
            let f = if tau.size() == 0 {
                Flag::unlabelled(text.parse()?)
            } else {
                text.parse()?
            };
            if b.index_of(&f)? != i {
                return Err(Error::LevelMismatch(format!("basis entry {i} (`{text}`) is out of order")));
            }
        }
        let coeffs = file
            .coefficients
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()?;
        LinearForm::new(tau, file.level, coeffs)
    }

    /// One `coefficient<TAB>basis element` line per basis element.
    pub fn table(&self) -> String {
        self.terms()
            .map(|(f, c)| format!("{c}\t{}\n", self.atom_text(&f)))
            .collect()
    }
}

impl fmt::Display for LinearForm {
    /// Parseable sum of nonzero terms, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (flag, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c} * {}", self.atom_text(&flag))?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// JSON shape of a [`LinearForm`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormFile {
    pub level: usize,
    #[serde(rename = "type")]
    pub tau: String,
    pub basis: Vec<String>,
    pub coefficients: Vec<String>,
}
