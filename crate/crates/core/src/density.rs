//! Exact induced densities by exhaustive subset enumeration.

use itertools::Itertools;
use num_traits::Zero;

use crate::basis::basis;
use crate::canon;
use crate::error::{Error, Result};
use crate::flag::{Flag, TypeGraph};
use crate::form::LinearForm;
use crate::graph::{Graph, MAX_CANONICAL_VERTICES};
use crate::rational::{binomial, ratio_u128, Rational};

/// Matches `host[prefix ++ extra]` against a fixed pattern, either through
/// canonical codes (small patterns) or a direct isomorphism test.
struct Matcher {
    pattern: Graph,
    fixed: usize,
    code: Option<u64>,
}

impl Matcher {
    /// `order` lists the labelled vertices of `pattern` first.
    fn new(pattern: &Graph, order: &[usize], fixed: usize) -> Self {
        let pattern = pattern.induced_ordered(order);
        let code = (pattern.n() <= MAX_CANONICAL_VERTICES).then(|| {
            canon::canonical_code_cached(pattern.n(), fixed, pattern.code())
        });
        Matcher { pattern, fixed, code }
    }

    fn unlabelled(pattern: &Graph) -> Self {
        let order: Vec<usize> = (0..pattern.n()).collect();
        Matcher::new(pattern, &order, 0)
    }

    fn labelled(pattern: &Flag) -> Self {
        let mut order = pattern.theta().to_vec();
        order.extend((0..pattern.n()).filter(|v| !pattern.theta().contains(v)));
        Matcher::new(pattern.graph(), &order, pattern.tau().size())
    }

    /// `verts` lists the labelled vertices first, then the sampled ones.
    fn matches(&self, host: &Graph, verts: &[usize]) -> bool {
        match self.code {
            Some(code) => {
                let raw = canon::induced_raw_code(host, verts);
                canon::canonical_code_cached(verts.len(), self.fixed, raw) == code
            }
            None => {
                let sub = host.induced_ordered(verts);
                sub.edge_count() == self.pattern.edge_count()
                    && fixed_isomorphic(&sub, &self.pattern, self.fixed)
            }
        }
    }
}

/// Isomorphism fixing the first `fixed` vertices pointwise.
fn fixed_isomorphic(a: &Graph, b: &Graph, fixed: usize) -> bool {
    let n = a.n();
    if n != b.n() {
        return false;
    }
    if (0..fixed).tuple_combinations().any(|(i, j)| a.has_edge(i, j) != b.has_edge(i, j)) {
        return false;
    }
    (fixed..n).permutations(n - fixed).any(|rest| {
        let map: Vec<usize> = (0..fixed).chain(rest).collect();
        a.edges().all(|(u, v)| b.has_edge(map[u], map[v]))
    })
}

/// `p(h, g)`: the fraction of `v(h)`-subsets of `V(g)` inducing a copy of
/// `h`. Zero when `h` is larger than `g`.
pub fn density(h: &Graph, g: &Graph) -> Rational {
    let (m, n) = (h.n(), g.n());
    if m > n {
        return Rational::zero();
    }
    let matcher = Matcher::unlabelled(h);
    let hits = (0..n)
        .combinations(m)
        .filter(|u| matcher.matches(g, u))
        .count();
    ratio_u128(hits as u128, binomial(n, m))
}

/// Densities in `g` of every graph of the level-`n` basis, in basis order.
pub fn density_profile(g: &Graph, n: usize) -> Result<Vec<Rational>> {
    let b = basis(&TypeGraph::empty(), n)?;
    let mut counts = vec![0u128; b.len()];
    if n > g.n() {
        return Ok(vec![Rational::zero(); b.len()]);
    }
    for u in (0..g.n()).combinations(n) {
        let raw = canon::induced_raw_code(g, &u);
        counts[b.index_of_code(canon::canonical_code_cached(n, 0, raw))] += 1;
    }
    let total = binomial(g.n(), n);
    Ok(counts.into_iter().map(|c| ratio_u128(c, total)).collect())
}

fn check_same_type(a: &TypeGraph, b: &TypeGraph) -> Result<()> {
    if a != b {
        return Err(Error::TypeMismatch(format!("flags of types {a} and {b}")));
    }
    Ok(())
}

fn unlabelled_vertices(f: &Flag) -> Vec<usize> {
    (0..f.n()).filter(|v| !f.theta().contains(v)).collect()
}

/// `p_τ(h, g)`: the fraction of `(v(h) - k)`-subsets `U` of the unlabelled
/// vertices of `g` with `(g[θ ∪ U], θ)` τ-isomorphic to `h`.
pub fn labelled_density(h: &Flag, g: &Flag) -> Result<Rational> {
    check_same_type(h.tau(), g.tau())?;
    let k = h.tau().size();
    if h.n() > g.n() {
        return Ok(Rational::zero());
    }
    let matcher = Matcher::labelled(h);
    let pool = unlabelled_vertices(g);
    let mut verts = Vec::with_capacity(h.n());
    let mut hits = 0u128;
    for u in pool.iter().copied().combinations(h.n() - k) {
        verts.clear();
        verts.extend_from_slice(g.theta());
        verts.extend(u);
        if matcher.matches(g.graph(), &verts) {
            hits += 1;
        }
    }
    Ok(ratio_u128(hits, binomial(g.n() - k, h.n() - k)))
}

/// Labelled densities in `g` of every flag of the level-`n` basis for the
/// type of `g`.
pub fn labelled_profile(g: &Flag, n: usize) -> Result<Vec<Rational>> {
    let tau = g.tau();
    let k = tau.size();
    let b = basis(tau, n)?;
    if n > g.n() {
        return Ok(vec![Rational::zero(); b.len()]);
    }
    let mut counts = vec![0u128; b.len()];
    let mut verts = Vec::with_capacity(n);
    for u in unlabelled_vertices(g).into_iter().combinations(n - k) {
        verts.clear();
        verts.extend_from_slice(g.theta());
        verts.extend(u);
        let raw = canon::induced_raw_code(g.graph(), &verts);
        counts[b.index_of_code(canon::canonical_code_cached(n, k, raw))] += 1;
    }
    let total = binomial(g.n() - k, n - k);
    Ok(counts.into_iter().map(|c| ratio_u128(c, total)).collect())
}

/// `r_host(h1, h2)`: the probability that disjoint uniformly random vertex
/// sets of sizes `v(h1)`, `v(h2)` induce `h1` and `h2` respectively.
pub fn split_density(h1: &Graph, h2: &Graph, host: &Graph) -> Result<Rational> {
    let (a, b, n) = (h1.n(), h2.n(), host.n());
    if a + b > n {
        return Err(Error::SizeViolation(format!(
            "patterns on {a} and {b} vertices do not fit disjointly in {n}"
        )));
    }
    let (m1, m2) = (Matcher::unlabelled(h1), Matcher::unlabelled(h2));
    let mut hits = 0u128;
    for u1 in (0..n).combinations(a) {
        if !m1.matches(host, &u1) {
            continue;
        }
        let rest: Vec<usize> = (0..n).filter(|v| !u1.contains(v)).collect();
        hits += rest
            .into_iter()
            .combinations(b)
            .filter(|u2| m2.matches(host, u2))
            .count() as u128;
    }
    Ok(ratio_u128(hits, binomial(n, a) * binomial(n - a, b)))
}

/// Labelled analogue of [`split_density`]: both sets are drawn from the
/// unlabelled vertices of `host` and extended by its labelled vertices.
pub fn labelled_split_density(h1: &Flag, h2: &Flag, host: &Flag) -> Result<Rational> {
    check_same_type(h1.tau(), h2.tau())?;
    check_same_type(h1.tau(), host.tau())?;
    let k = host.tau().size();
    let (a, b, n) = (h1.n() - k, h2.n() - k, host.n() - k);
    if a + b > n {
        return Err(Error::SizeViolation(format!(
            "flags on {} and {} vertices do not fit disjointly in {}",
            h1.n(),
            h2.n(),
            host.n()
        )));
    }
    let (m1, m2) = (Matcher::labelled(h1), Matcher::labelled(h2));
    let pool = unlabelled_vertices(host);
    let with_labels = |u: &[usize]| -> Vec<usize> { host.theta().iter().chain(u).copied().collect() };
    let mut hits = 0u128;
    for u1 in pool.iter().copied().combinations(a) {
        if !m1.matches(host.graph(), &with_labels(&u1)) {
            continue;
        }
        let rest: Vec<usize> = pool.iter().copied().filter(|v| !u1.contains(v)).collect();
        hits += rest
            .into_iter()
            .combinations(b)
            .filter(|u2| m2.matches(host.graph(), &with_labels(u2)))
            .count() as u128;
    }
    Ok(ratio_u128(hits, binomial(n, a) * binomial(n - a, b)))
}

/// `h` written over the level-`n` graph basis: the coefficient of `H'` is
/// `p(h, H')`.
pub fn chain_decompose(h: &Graph, n: usize) -> Result<LinearForm> {
    if h.n() > n {
        return Err(Error::SizeViolation(format!(
            "pattern on {} vertices cannot be decomposed at level {n}",
            h.n()
        )));
    }
    let tau = TypeGraph::empty();
    let b = basis(&tau, n)?;
    let coeffs = b.elems().iter().map(|hp| density(h, hp.graph())).collect();
    LinearForm::new(tau, n, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn g(s: &str) -> Graph {
        s.parse().unwrap()
    }

    fn f(s: &str) -> Flag {
        s.parse().unwrap()
    }

    #[test]
    fn unlabelled_examples() {
        assert_eq!(density(&Graph::complete(2), &Graph::complete(3)), int(1));
        assert_eq!(density(&Graph::complete(2), &g("g:3:{12,23}")), frac(2, 3));
        assert_eq!(density(&Graph::complete(4), &Graph::complete(3)), int(0));
        assert_eq!(density(&Graph::empty(), &g("g:4:{12}")), int(1));
    }

    #[test]
    fn labelled_examples() {
        let k2 = f("f:2:{12}|t:1:{}|theta:1");
        assert_eq!(labelled_density(&k2, &k2).unwrap(), int(1));
        assert_eq!(labelled_density(&k2, &f("f:3:{12,13}|t:1:{}|theta:1")).unwrap(), int(1));
        assert_eq!(labelled_density(&k2, &f("f:3:{12,23}|t:1:{}|theta:1")).unwrap(), frac(1, 2));
        let other = f("f:2:{12}|t:2:{12}|theta:1,2");
        assert!(labelled_density(&k2, &other).is_err());
    }

    #[test]
    fn split_examples() {
        let k1 = Graph::edgeless(1);
        assert_eq!(split_density(&k1, &k1, &g("g:4:{12}")).unwrap(), int(1));
        assert_eq!(split_density(&Graph::complete(2), &k1, &Graph::complete(3)).unwrap(), int(1));
        assert!(split_density(&Graph::complete(2), &Graph::complete(2), &Graph::complete(3)).is_err());
    }

    #[test]
    fn labelled_split_examples() {
        let li2 = f("f:2:{}|t:1:{}|theta:1");
        let le2 = f("f:2:{12}|t:1:{}|theta:1");
        assert_eq!(labelled_split_density(&li2, &li2, &f("f:3:{}|t:1:{}|theta:1")).unwrap(), int(1));
        let isolated = f("f:3:{12}|t:1:{}|theta:3");
        let endpoint = f("f:3:{12}|t:1:{}|theta:1");
        assert_eq!(labelled_split_density(&li2, &le2, &isolated).unwrap(), int(0));
        assert_eq!(labelled_split_density(&li2, &le2, &endpoint).unwrap(), frac(1, 2));
        let path_end = f("f:3:{12,23}|t:1:{}|theta:1");
        assert_eq!(labelled_split_density(&li2, &le2, &path_end).unwrap(), frac(1, 2));
        let lk3 = f("f:3:{12,13,23}|t:1:{}|theta:1");
        assert_eq!(labelled_split_density(&le2, &le2, &lk3).unwrap(), int(1));
    }

    #[test]
    fn edge_decomposes_at_level_three() {
        let lf = chain_decompose(&Graph::complete(2), 3).unwrap();
        assert_eq!(lf.coeffs(), &[int(0), frac(1, 3), frac(2, 3), int(1)]);
        assert!(chain_decompose(&Graph::complete(4), 3).is_err());
    }

    #[test]
    fn large_patterns_fall_back_to_direct_isomorphism() {
        let c9 = Graph::cycle(9);
        assert_eq!(density(&c9, &c9), int(1));
        assert_eq!(density(&Graph::path(9), &c9), int(0));
    }
}
