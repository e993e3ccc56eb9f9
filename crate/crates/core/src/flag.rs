//! Types, τ-labelled graphs (flags) and labelling probabilities.
//!
//! Text formats: a type is `t:<k>:{edges}`, a flag is
//! `f:<n>:{edges}|t:<k>:{type-edges}|theta:<image list>` with a 1-based,
//! comma-separated image list (empty when `k = 0`).

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;

use crate::canon;
use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_CANONICAL_VERTICES};
use crate::rational::{falling_factorial, ratio_u128, Rational};

/// A type: a graph on the labelled vertex set `0..k`. Types are compared as
/// labelled graphs, not up to isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct TypeGraph(Graph);

impl TypeGraph {
    pub fn new(g: Graph) -> Self {
        TypeGraph(g)
    }

    /// The type of size 0; its flags are plain graphs.
    pub fn empty() -> Self {
        TypeGraph(Graph::empty())
    }

    /// The unique type of size 1.
    pub fn vertex() -> Self {
        TypeGraph(Graph::edgeless(1))
    }

    pub fn size(&self) -> usize {
        self.0.n()
    }

    pub fn graph(&self) -> &Graph {
        &self.0
    }

    /// `(τ, id)`: the type regarded as a flag of itself.
    pub fn identity_flag(&self) -> Flag {
        Flag {
            graph: self.0.clone(),
            theta: (0..self.size()).collect(),
            tau: self.clone(),
        }
    }

    pub(crate) fn scan(src: &str, start: usize) -> Result<(TypeGraph, usize)> {
        let (g, end) = Graph::scan(src, start, "t:")?;
        Ok((TypeGraph(g), end))
    }
}

impl fmt::Display for TypeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("t:")?;
        self.0.fmt_body(f)
    }
}

impl FromStr for TypeGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (ty, end) = TypeGraph::scan(t, 0)?;
        if end != t.len() {
            return Err(Error::parse(end, "trailing input after type"));
        }
        Ok(ty)
    }
}

/// Whether the injection `theta` embeds `tau` into `g` as an induced
/// subgraph.
pub fn is_embedding(tau: &TypeGraph, theta: &[usize], g: &Graph) -> Result<bool> {
    if theta.len() != tau.size() {
        return Err(Error::InvalidFlag(format!(
            "labelling has {} entries for a type of size {}",
            theta.len(),
            tau.size()
        )));
    }
    if let Some(&bad) = theta.iter().find(|&&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange { vertex: bad, n: g.n() });
    }
    if !theta.iter().all_unique() {
        return Err(Error::InvalidFlag("labelling is not injective".into()));
    }
    Ok(theta_embeds(tau, theta, g))
}

fn theta_embeds(tau: &TypeGraph, theta: &[usize], g: &Graph) -> bool {
    (0..theta.len())
        .tuple_combinations()
        .all(|(i, j)| tau.0.has_edge(i, j) == g.has_edge(theta[i], theta[j]))
}

/// A τ-labelled graph `(G, θ)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Flag {
    graph: Graph,
    theta: Vec<usize>,
    tau: TypeGraph,
}

impl Flag {
    pub fn new(graph: Graph, theta: Vec<usize>, tau: TypeGraph) -> Result<Self> {
        if !is_embedding(&tau, &theta, &graph)? {
            return Err(Error::InvalidFlag(format!(
                "labelling {:?} does not embed {tau} into {graph}",
                theta.iter().map(|v| v + 1).collect::<Vec<_>>()
            )));
        }
        Ok(Flag { graph, theta, tau })
    }

    /// A graph regarded as a flag of the empty type.
    pub fn unlabelled(graph: Graph) -> Self {
        Flag {
            graph,
            theta: Vec::new(),
            tau: TypeGraph::empty(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    pub fn tau(&self) -> &TypeGraph {
        &self.tau
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Vertex list with the labelled vertices first (in label order) and the
    /// remaining vertices after them in increasing order.
    fn labelled_first_order(&self) -> Vec<usize> {
        let mut order = self.theta.clone();
        order.extend((0..self.n()).filter(|v| !self.theta.contains(v)));
        order
    }

    pub fn canonical(&self) -> Result<CanonicalFlag> {
        if self.n() > MAX_CANONICAL_VERTICES {
            return Err(Error::TooLarge {
                n: self.n(),
                cap: MAX_CANONICAL_VERTICES,
            });
        }
        let raw = canon::induced_raw_code(&self.graph, &self.labelled_first_order());
        let code = canon::canonical_code_cached(self.n(), self.tau.size(), raw);
        Ok(CanonicalFlag::from_code(self.tau.clone(), self.n(), code))
    }

    pub(crate) fn scan(src: &str, start: usize) -> Result<(Flag, usize)> {
        let (graph, mut i) = Graph::scan(src, start, "f:")?;
        if !src[i..].starts_with('|') {
            return Err(Error::parse(i, "expected `|t:` after flag graph"));
        }
        i += 1;
        let (tau, j) = TypeGraph::scan(src, i)?;
        i = j;
        if !src[i..].starts_with("|theta:") {
            return Err(Error::parse(i, "expected `|theta:`"));
        }
        i += "|theta:".len();
        let list_start = i;
        let bytes = src.as_bytes();
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b',') {
            i += 1;
        }
        let list = &src[list_start..i];
        let mut theta = Vec::new();
        if !list.is_empty() {
            for item in list.split(',') {
                let v: usize = item
                    .parse()
                    .map_err(|_| Error::parse(list_start, format!("malformed label image list `{list}`")))?;
                if v == 0 || v > graph.n() {
                    return Err(Error::parse(list_start, format!("label image {v} out of range 1..={}", graph.n())));
                }
                theta.push(v - 1);
            }
        }
        let flag = Flag::new(graph, theta, tau).map_err(|e| Error::parse(start, e.to_string()))?;
        Ok((flag, i))
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("f:")?;
        self.graph.fmt_body(f)?;
        write!(f, "|{}|theta:", self.tau)?;
        write!(f, "{}", self.theta.iter().map(|v| v + 1).join(","))
    }
}

impl FromStr for Flag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (flag, end) = Flag::scan(t, 0)?;
        if end != t.len() {
            return Err(Error::parse(end, "trailing input after flag"));
        }
        Ok(flag)
    }
}

/// Whether a label-fixing isomorphism between the two flags exists.
pub fn tau_isomorphic(a: &Flag, b: &Flag) -> Result<bool> {
    if a.tau != b.tau {
        return Err(Error::TypeMismatch(format!("{} vs {}", a.tau, b.tau)));
    }
    if a.n() != b.n() || a.graph.edge_count() != b.graph.edge_count() {
        return Ok(false);
    }
    Ok(a.canonical()?.code == b.canonical()?.code)
}

/// A flag in canonical form: labels on vertices `0..k`, unlabelled vertices
/// relabelled to maximise the edge code. Ordered like [`CanonicalGraph`].
///
/// [`CanonicalGraph`]: crate::graph::CanonicalGraph
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CanonicalFlag {
    flag: Flag,
    code: u64,
}

impl CanonicalFlag {
    pub(crate) fn from_code(tau: TypeGraph, n: usize, code: u64) -> Self {
        let k = tau.size();
        CanonicalFlag {
            flag: Flag {
                graph: Graph::from_code(n, code),
                theta: (0..k).collect(),
                tau,
            },
            code,
        }
    }

    pub fn flag(&self) -> &Flag {
        &self.flag
    }

    pub fn graph(&self) -> &Graph {
        &self.flag.graph
    }

    pub fn tau(&self) -> &TypeGraph {
        &self.flag.tau
    }

    pub fn n(&self) -> usize {
        self.flag.n()
    }

    pub(crate) fn code(&self) -> u64 {
        self.code
    }

    pub fn into_flag(self) -> Flag {
        self.flag
    }
}

impl Ord for CanonicalFlag {
    fn cmp(&self, other: &Self) -> Ordering {
        self.flag
            .tau
            .cmp(&other.flag.tau)
            .then_with(|| self.n().cmp(&other.n()))
            .then_with(|| self.graph().edge_count().cmp(&other.graph().edge_count()))
            .then_with(|| other.code.cmp(&self.code))
    }
}

impl PartialOrd for CanonicalFlag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CanonicalFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.flag.fmt(f)
    }
}

type FlagCache = Mutex<HashMap<(TypeGraph, usize), Arc<Vec<CanonicalFlag>>>>;

fn flag_cache() -> &'static FlagCache {
    static CACHE: OnceLock<FlagCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// One representative per τ-isomorphism class of τ-flags on `n` vertices,
/// in basis order.
pub fn enumerate_flags(tau: &TypeGraph, n: usize) -> Result<Arc<Vec<CanonicalFlag>>> {
    let k = tau.size();
    if n < k {
        return Err(Error::SizeViolation(format!(
            "flags of a type of size {k} need at least {k} vertices, got {n}"
        )));
    }
    if n > MAX_CANONICAL_VERTICES {
        return Err(Error::TooLarge {
            n,
            cap: MAX_CANONICAL_VERTICES,
        });
    }
    let key = (tau.clone(), n);
    if let Some(v) = flag_cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    // every graph on 0..n whose first k vertices induce τ, one bit per pair
    // touching an unlabelled vertex
    let type_code = tau
        .graph()
        .edges()
        .fold(0u64, |c, (i, j)| c | 1 << canon::pair_bit(i, j, n));
    let free_bits: Vec<u32> = (0..n)
        .tuple_combinations()
        .filter(|&(_, j)| j >= k)
        .map(|(i, j)| canon::pair_bit(i, j, n))
        .collect();
    let mut seen = BTreeSet::new();
    for mask in 0u64..(1 << free_bits.len()) {
        let mut raw = type_code;
        for (b, bit) in free_bits.iter().enumerate() {
            if mask >> b & 1 == 1 {
                raw |= 1 << bit;
            }
        }
        let code = canon::canonical_code_cached(n, k, raw);
        seen.insert(CanonicalFlag::from_code(tau.clone(), n, code));
    }
    let list = Arc::new(seen.into_iter().collect::<Vec<_>>());
    flag_cache().lock().unwrap().insert(key, list.clone());
    Ok(list)
}

/// Probability that a uniformly random injection `[k] -> V(f)` embeds τ
/// and yields a flag τ-isomorphic to `f`.
pub fn q_coefficient(f: &Flag) -> Result<Rational> {
    let target = f.canonical()?.code;
    let (n, k) = (f.n(), f.tau.size());
    let mut hits = 0u128;
    for theta in (0..n).permutations(k) {
        if !theta_embeds(&f.tau, &theta, &f.graph) {
            continue;
        }
        let mut order = theta.clone();
        order.extend((0..n).filter(|v| !theta.contains(v)));
        let raw = canon::induced_raw_code(&f.graph, &order);
        if canon::canonical_code_cached(n, k, raw) == target {
            hits += 1;
        }
    }
    Ok(ratio_u128(hits, falling_factorial(n, k)))
}
