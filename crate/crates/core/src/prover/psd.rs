//! Exact positive-semidefiniteness by pivoted LDLᵀ over the rationals.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

/// A square matrix of rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidCertificate(format!("matrix with {m} rows is not square")));
        }
        Ok(RationalMatrix { rows })
    }

    pub fn zeros(m: usize) -> Self {
        RationalMatrix {
            rows: vec![vec![Rational::zero(); m]; m],
        }
    }

    pub fn identity(m: usize) -> Self {
        let mut q = Self::zeros(m);
        for i in 0..m {
            q.rows[i][i] = Rational::from_integer(1.into());
        }
        q
    }

    /// `Bᵀ B` for an arbitrary `r × m` matrix `B`.
    pub fn gram(b: &[Vec<Rational>]) -> Self {
        let m = b.first().map_or(0, Vec::len);
        let mut q = Self::zeros(m);
        for i in 0..m {
            for j in 0..m {
                q.rows[i][j] = b.iter().map(|row| &row[i] * &row[j]).sum();
            }
        }
        q
    }

    pub fn parse(rows: &[Vec<String>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.rows[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.dim();
        (0..m).all(|i| (0..i).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows.iter().map(|row| row.iter().map(|x| x * r).collect()).collect(),
        }
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Pivots `d_i` of `Q = P L D Lᵀ Pᵀ`, when `Q` is PSD.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ldl {
    pub order: Vec<usize>,
    pub pivots: Vec<Rational>,
}

/// Symmetric-pivoted LDLᵀ. `Ok(None)` means `q` is not PSD: a negative
/// pivot appeared, or only zero diagonals remain beside a nonzero entry.
pub fn ldl(q: &RationalMatrix) -> Result<Option<Ldl>> {
    if !q.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut a = q.rows.clone();
    let mut active: Vec<usize> = (0..q.dim()).collect();
    let mut out = Ldl {
        order: Vec::new(),
        pivots: Vec::new(),
    };
    while !active.is_empty() {
        if active.iter().any(|&i| a[i][i].is_negative()) {
            return Ok(None);
        }
        let &p = active.iter().max_by(|&&i, &&j| a[i][i].cmp(&a[j][j])).unwrap();
        if a[p][p].is_zero() {
            let clean = active.iter().all(|&i| active.iter().all(|&j| a[i][j].is_zero()));
            if !clean {
                return Ok(None);
            }
            out.order.extend(active.iter().copied());
            out.pivots.extend(active.iter().map(|_| Rational::zero()));
            return Ok(Some(out));
        }
        active.retain(|&i| i != p);
        let d = a[p][p].clone();
        for &i in &active {
            if a[i][p].is_zero() {
                continue;
            }
            let l = &a[i][p] / &d;
            for &j in &active {
                let delta = &l * &a[p][j];
                a[i][j] -= delta;
            }
        }
        out.order.push(p);
        out.pivots.push(d);
    }
    Ok(Some(out))
}

/// Exact PSD test; rejects non-symmetric input.
pub fn psd_check_exact(q: &RationalMatrix) -> Result<bool> {
    Ok(ldl(q)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::new(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn small_cases() {
        assert!(psd_check_exact(&m(&[&[1, -1], &[-1, 1]])).unwrap());
        assert!(psd_check_exact(&m(&[&[0]])).unwrap());
        assert!(!psd_check_exact(&m(&[&[-1]])).unwrap());
        assert!(!psd_check_exact(&m(&[&[0, 1], &[1, 0]])).unwrap());
        assert!(!psd_check_exact(&m(&[&[1, 2], &[2, 1]])).unwrap());
        assert!(psd_check_exact(&RationalMatrix::zeros(0)).unwrap());
        assert_eq!(psd_check_exact(&m(&[&[1, 0], &[1, 1]])), Err(Error::NotSymmetric));
    }

    #[test]
    fn gram_matrices_are_psd() {
        let b = vec![vec![frac(1, 2), int(3), int(-1)], vec![int(0), frac(-2, 3), int(5)]];
        let q = RationalMatrix::gram(&b);
        assert!(psd_check_exact(&q).unwrap());
        assert_eq!(ldl(&q).unwrap().unwrap().pivots.iter().filter(|p| !p.is_zero()).count(), 2);
    }
}
