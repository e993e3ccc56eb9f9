//! Level-`n` bases of flags and the cached transition tables between levels:
//! chain-rule lifting coefficients and product (split-density) coefficients.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;

use crate::canon;
use crate::error::{Error, Result};
use crate::flag::{enumerate_flags, CanonicalFlag, Flag, TypeGraph};
use crate::rational::{binomial, ratio_u128, Rational};

/// The deterministic basis of τ-flags on `level` vertices. For the empty
/// type this is the complete set of graphs on `level` vertices.
#[derive(Debug)]
pub struct Basis {
    tau: TypeGraph,
    level: usize,
    elems: Arc<Vec<CanonicalFlag>>,
    index: HashMap<u64, usize>,
}

impl Basis {
    pub fn tau(&self) -> &TypeGraph {
        &self.tau
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[CanonicalFlag] {
        &self.elems
    }

    pub fn is_unlabelled(&self) -> bool {
        self.tau.size() == 0
    }

    /// Position of the class of `f` in this basis.
    pub fn index_of(&self, f: &Flag) -> Result<usize> {
        if f.tau() != &self.tau {
            return Err(Error::TypeMismatch(format!("{} is not a {}-flag", f, self.tau)));
        }
        if f.n() != self.level {
            return Err(Error::LevelMismatch(format!(
                "{} has {} vertices, basis level is {}",
                f,
                f.n(),
                self.level
            )));
        }
        Ok(self.index[&f.canonical()?.code()])
    }

    pub(crate) fn index_of_code(&self, code: u64) -> usize {
        self.index[&code]
    }
}

type BasisCache = Mutex<HashMap<(TypeGraph, usize), Arc<Basis>>>;

pub fn basis(tau: &TypeGraph, level: usize) -> Result<Arc<Basis>> {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (tau.clone(), level);
    if let Some(b) = cache.lock().unwrap().get(&key) {
        return Ok(b.clone());
    }
    let elems = enumerate_flags(tau, level)?;
    let index = elems.iter().enumerate().map(|(i, f)| (f.code(), i)).collect();
    let b = Arc::new(Basis {
        tau: tau.clone(),
        level,
        elems,
        index,
    });
    cache.lock().unwrap().insert(key, b.clone());
    Ok(b)
}

/// Canonical code of the sub-flag of `host` (labels on `0..k`) spanned by
/// the labelled vertices plus `extra`.
fn subflag_code(host: &CanonicalFlag, k: usize, extra: &[usize], scratch: &mut Vec<usize>) -> u64 {
    scratch.clear();
    scratch.extend(0..k);
    scratch.extend_from_slice(extra);
    let raw = canon::induced_raw_code(host.graph(), scratch);
    canon::canonical_code_cached(scratch.len(), k, raw)
}

/// Sparse rows indexed by the level-`n` basis.
pub type LiftTable = Vec<Vec<(usize, Rational)>>;
pub type ProductTable = Vec<Vec<((usize, usize), Rational)>>;

/// Row `H` lists `(F, p_τ(F, H))` for every level-`m` flag `F` with nonzero
/// density in the level-`n` flag `H`.
pub fn lift_table(tau: &TypeGraph, m: usize, n: usize) -> Result<Arc<LiftTable>> {
    static CACHE: OnceLock<Mutex<HashMap<(TypeGraph, usize, usize), Arc<LiftTable>>>> = OnceLock::new();
    let k = tau.size();
    if m < k || m > n {
        return Err(Error::SizeViolation(format!("cannot lift level {m} to level {n}")));
    }
    let cache = CACHE.get_or_init(Default::default);
    let key = (tau.clone(), m, n);
    if let Some(t) = cache.lock().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let small = basis(tau, m)?;
    let big = basis(tau, n)?;
    let total = binomial(n - k, m - k);
    let mut scratch = Vec::new();
    let table: LiftTable = big
        .elems()
        .iter()
        .map(|host| {
            let mut counts: HashMap<usize, u128> = HashMap::new();
            for u in (k..n).combinations(m - k) {
                let code = subflag_code(host, k, &u, &mut scratch);
                *counts.entry(small.index_of_code(code)).or_default() += 1;
            }
            let mut row: Vec<(usize, Rational)> =
                counts.into_iter().map(|(i, c)| (i, ratio_u128(c, total))).collect();
            row.sort_by_key(|e| e.0);
            row
        })
        .collect();
    let table = Arc::new(table);
    cache.lock().unwrap().insert(key, table.clone());
    Ok(table)
}

/// Row `H` lists `((i, j), r_H)` where `r_H` is the probability that two
/// disjoint random sets of unlabelled vertices of sizes `a - k` and `b - k`
/// span the `i`-th level-`a` and `j`-th level-`b` flags.
pub fn product_table(tau: &TypeGraph, a: usize, b: usize, n: usize) -> Result<Arc<ProductTable>> {
    static CACHE: OnceLock<Mutex<HashMap<(TypeGraph, usize, usize, usize), Arc<ProductTable>>>> =
        OnceLock::new();
    let k = tau.size();
    if a < k || b < k || a + b - k > n {
        return Err(Error::SizeViolation(format!(
            "product of levels {a} and {b} does not fit at level {n}"
        )));
    }
    let cache = CACHE.get_or_init(Default::default);
    let key = (tau.clone(), a, b, n);
    if let Some(t) = cache.lock().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let left = basis(tau, a)?;
    let right = basis(tau, b)?;
    let big = basis(tau, n)?;
    let total = binomial(n - k, a - k) * binomial(n - a, b - k);
    let mut scratch = Vec::new();
    let table: ProductTable = big
        .elems()
        .iter()
        .map(|host| {
            let mut counts: HashMap<(usize, usize), u128> = HashMap::new();
            for u1 in (k..n).combinations(a - k) {
                let i = left.index_of_code(subflag_code(host, k, &u1, &mut scratch));
                let rest: Vec<usize> = (k..n).filter(|v| !u1.contains(v)).collect();
                for u2 in rest.into_iter().combinations(b - k) {
                    let j = right.index_of_code(subflag_code(host, k, &u2, &mut scratch));
                    *counts.entry((i, j)).or_default() += 1;
                }
            }
            let mut row: Vec<((usize, usize), Rational)> =
                counts.into_iter().map(|(ij, c)| (ij, ratio_u128(c, total))).collect();
            row.sort_by_key(|e| e.0);
            row
        })
        .collect();
    let table = Arc::new(table);
    cache.lock().unwrap().insert(key, table.clone());
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_graphs;

    #[test]
    fn empty_type_basis_matches_graph_enumeration() {
        for n in 0..=5 {
            let b = basis(&TypeGraph::empty(), n).unwrap();
            let graphs = enumerate_graphs(n).unwrap();
            let from_flags: Vec<_> = b.elems().iter().map(|f| f.graph().clone()).collect();
            let from_graphs: Vec<_> = graphs.iter().map(|g| g.graph().clone()).collect();
            assert_eq!(from_flags, from_graphs);
        }
    }

    #[test]
    fn lift_rows_sum_to_one() {
        let tau = TypeGraph::vertex();
        let t = lift_table(&tau, 2, 4).unwrap();
        for row in t.iter() {
            let s: Rational = row.iter().map(|e| e.1.clone()).sum();
            assert_eq!(s, crate::rational::int(1));
        }
    }

    #[test]
    fn product_rows_sum_to_one() {
        let t = product_table(&TypeGraph::empty(), 2, 2, 5).unwrap();
        for row in t.iter() {
            let s: Rational = row.iter().map(|e| e.1.clone()).sum();
            assert_eq!(s, crate::rational::int(1));
        }
        assert!(product_table(&TypeGraph::empty(), 3, 3, 5).is_err());
    }
}
