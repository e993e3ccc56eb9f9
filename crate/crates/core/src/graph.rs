//! Finite simple graphs, canonical forms and enumeration up to isomorphism.
//!
//! Vertices are `0..n` in the Rust API; the text format `g:<n>:{...}` is
//! 1-based. Pairs are written as two concatenated digits (`g:3:{12,23}`)
//! when `n <= 9` and as `i-j` otherwise.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;

use crate::canon;
use crate::error::{Error, Result};

/// Hard limit on the vertex count of any [`Graph`] (rows are `u64` masks).
pub const MAX_VERTICES: usize = 64;
/// Largest graph that can be canonicalised.
pub const MAX_CANONICAL_VERTICES: usize = 8;
/// Default cap for [`enumerate_graphs`].
pub const DEFAULT_ENUMERATION_CAP: usize = 7;

/// A finite simple graph on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn edgeless(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graphs are limited to {MAX_VERTICES} vertices");
        Graph { n, adj: vec![0; n] }
    }

    /// The graph with no vertices.
    pub fn empty() -> Self {
        Graph::edgeless(0)
    }

    /// Builds a graph from 0-based edge pairs; rejects loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { n, cap: MAX_VERTICES });
        }
        let mut g = Graph::edgeless(n);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", u + 1)));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {{{},{}}}",
                    u.min(v) + 1,
                    u.max(v) + 1
                )));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::edgeless(n);
        for (u, v) in (0..n).tuple_combinations() {
            g.add_edge(u, v);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::edgeless(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(0, n - 1);
        }
        g
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::edgeless(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub(crate) fn from_code(n: usize, code: u64) -> Self {
        let mut g = Graph::edgeless(n);
        for (a, b) in (0..n).tuple_combinations() {
            if code >> canon::pair_bit(a, b, n) & 1 == 1 {
                g.add_edge(a, b);
            }
        }
        g
    }

    /// Edge-set code under the identity labelling.
    pub(crate) fn code(&self) -> u64 {
        debug_assert!(self.n <= 11);
        canon::induced_raw_code(self, &(0..self.n).collect::<Vec<_>>())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub(crate) fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.adj[v];
        (0..self.n).filter(move |&u| row >> u & 1 == 1)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| ((u + 1)..self.n).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v)))
    }

    /// Subgraph induced by `vertices`, relabelled order-preservingly.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut u: Vec<usize> = vertices.to_vec();
        u.sort_unstable();
        u.dedup();
        if let Some(&bad) = u.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: bad, n: self.n });
        }
        Ok(self.induced_ordered(&u))
    }

    /// Subgraph on `verts` where `verts[i]` becomes vertex `i`.
    pub(crate) fn induced_ordered(&self, verts: &[usize]) -> Graph {
        let mut g = Graph::edgeless(verts.len());
        for (a, b) in (0..verts.len()).tuple_combinations() {
            if self.has_edge(verts[a], verts[b]) {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::edgeless(self.n);
        for (u, v) in (0..self.n).tuple_combinations() {
            if !self.has_edge(u, v) {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::edgeless(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn canonical_form(&self) -> Result<CanonicalGraph> {
        CanonicalGraph::new(self)
    }

    pub fn automorphism_count(&self) -> u64 {
        if self.n <= MAX_CANONICAL_VERTICES {
            canon::automorphisms(self, 0)
        } else {
            // colour classes may be large; count by backtracking instead
            let mut count = 0u64;
            backtrack_isomorphisms(self, self, &mut |_| {
                count += 1;
                true
            });
            count
        }
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        if self.n != other.n || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut ds: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut dt: Vec<usize> = (0..other.n).map(|v| other.degree(v)).collect();
        ds.sort_unstable();
        dt.sort_unstable();
        if ds != dt {
            return false;
        }
        if self.n <= MAX_CANONICAL_VERTICES {
            return canon::canonical_labelling(self, 0).0 == canon::canonical_labelling(other, 0).0;
        }
        let mut found = false;
        backtrack_isomorphisms(self, other, &mut |_| {
            found = true;
            false
        });
        found
    }

    /// Parses a `g:<n>:{...}` literal starting at byte `start` of `src`,
    /// returning the graph and the index just past it.
    pub(crate) fn scan(src: &str, start: usize, prefix: &str) -> Result<(Graph, usize)> {
        let bytes = src.as_bytes();
        let mut i = start;
        if !src[i..].starts_with(prefix) {
            return Err(Error::parse(i, format!("expected `{prefix}`")));
        }
        i += prefix.len();
        let num_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i == num_start {
            return Err(Error::parse(i, "expected vertex count"));
        }
        let n: usize = src[num_start..i]
            .parse()
            .map_err(|_| Error::parse(num_start, "vertex count out of range"))?;
        if n > MAX_VERTICES {
            return Err(Error::parse(num_start, format!("at most {MAX_VERTICES} vertices are supported")));
        }
        if !src[i..].starts_with(":{") {
            return Err(Error::parse(i, "expected `:{`"));
        }
        i += 2;
        let close = src[i..]
            .find('}')
            .map(|o| i + o)
            .ok_or_else(|| Error::parse(i, "unterminated edge list"))?;
        let body = &src[i..close];
        let mut edges = Vec::new();
        let mut off = i;
        if !body.trim().is_empty() {
            for item in body.split(',') {
                let t = item.trim();
                let (a, b) = if let Some((a, b)) = t.split_once('-') {
                    (a.trim().parse::<usize>().ok(), b.trim().parse::<usize>().ok())
                } else if t.len() == 2 && t.bytes().all(|c| c.is_ascii_digit()) {
                    (Some((t.as_bytes()[0] - b'0') as usize), Some((t.as_bytes()[1] - b'0') as usize))
                } else {
                    (None, None)
                };
                let (a, b) = match (a, b) {
                    (Some(a), Some(b)) => (a, b),
                    _ => return Err(Error::parse(off, format!("malformed vertex pair `{t}`"))),
                };
                for w in [a, b] {
                    if w == 0 || w > n {
                        return Err(Error::parse(off, format!("vertex {w} out of range 1..={n}")));
                    }
                }
                edges.push((a - 1, b - 1));
                off += item.len() + 1;
            }
        }
        let g = Graph::from_edges(n, &edges).map_err(|e| Error::parse(i, e.to_string()))?;
        Ok((g, close + 1))
    }

    pub(crate) fn fmt_body(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{{", self.n)?;
        let wide = self.n > 9;
        for (idx, (u, v)) in self.edges().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            if wide {
                write!(f, "{}-{}", u + 1, v + 1)?;
            } else {
                write!(f, "{}{}", u + 1, v + 1)?;
            }
        }
        f.write_str("}")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("g:")?;
        self.fmt_body(f)
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (g, end) = Graph::scan(t, 0, "g:")?;
        if end != t.len() {
            return Err(Error::parse(end, "trailing input after graph"));
        }
        Ok(g)
    }
}

/// Calls `visit` with every isomorphism `g -> h` (as a vertex map) until it
/// returns `false`.
fn backtrack_isomorphisms(g: &Graph, h: &Graph, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn go(
        g: &Graph,
        h: &Graph,
        map: &mut Vec<usize>,
        used: &mut u64,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let v = map.len();
        if v == g.n() {
            return visit(map);
        }
        for w in 0..h.n() {
            if *used >> w & 1 == 1 || g.degree(v) != h.degree(w) {
                continue;
            }
            if (0..v).any(|u| g.has_edge(u, v) != h.has_edge(map[u], w)) {
                continue;
            }
            map.push(w);
            *used |= 1 << w;
            let more = go(g, h, map, used, visit);
            map.pop();
            *used &= !(1 << w);
            if !more {
                return false;
            }
        }
        true
    }
    if g.n() != h.n() {
        return;
    }
    go(g, h, &mut Vec::with_capacity(g.n()), &mut 0, visit);
}

/// A graph in canonical labelling. Two graphs share a `CanonicalGraph` iff
/// they are isomorphic. Ordered by edge count, then by sorted edge list.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CanonicalGraph {
    graph: Graph,
    code: u64,
}

impl CanonicalGraph {
    pub fn new(g: &Graph) -> Result<Self> {
        if g.n() > MAX_CANONICAL_VERTICES {
            return Err(Error::TooLarge {
                n: g.n(),
                cap: MAX_CANONICAL_VERTICES,
            });
        }
        let code = canon::canonical_code_cached(g.n(), 0, g.code());
        Ok(CanonicalGraph {
            graph: Graph::from_code(g.n(), code),
            code,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }
}

impl Ord for CanonicalGraph {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n()
            .cmp(&other.n())
            .then_with(|| self.graph.edge_count().cmp(&other.graph.edge_count()))
            .then_with(|| other.code.cmp(&self.code))
    }
}

impl PartialOrd for CanonicalGraph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CanonicalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.graph.fmt(f)
    }
}

impl AsRef<Graph> for CanonicalGraph {
    fn as_ref(&self) -> &Graph {
        &self.graph
    }
}

type GraphCache = Mutex<HashMap<usize, Arc<Vec<CanonicalGraph>>>>;

fn graph_cache() -> &'static GraphCache {
    static CACHE: OnceLock<GraphCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// One representative per isomorphism class of graphs on `n` vertices, in
/// basis order. `n` is capped at [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_graphs(n: usize) -> Result<Arc<Vec<CanonicalGraph>>> {
    enumerate_graphs_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_graphs_with_cap(n: usize, cap: usize) -> Result<Arc<Vec<CanonicalGraph>>> {
    let cap = cap.min(MAX_CANONICAL_VERTICES);
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    if let Some(v) = graph_cache().lock().unwrap().get(&n) {
        return Ok(v.clone());
    }
    let list = if n == 0 {
        vec![CanonicalGraph::new(&Graph::empty())?]
    } else {
        // extend every class on n-1 vertices by a new vertex with each
        // possible neighbourhood
        let smaller = enumerate_graphs_with_cap(n - 1, cap)?;
        let mut seen = BTreeSet::new();
        for base in smaller.iter() {
            for nbhd in 0u64..(1 << (n - 1)) {
                let mut g = Graph::edgeless(n);
                for (u, v) in base.graph().edges() {
                    g.add_edge(u, v);
                }
                for u in 0..n - 1 {
                    if nbhd >> u & 1 == 1 {
                        g.add_edge(u, n - 1);
                    }
                }
                seen.insert(CanonicalGraph::new(&g)?);
            }
        }
        seen.into_iter().collect()
    };
    let list = Arc::new(list);
    graph_cache().lock().unwrap().insert(n, list.clone());
    Ok(list)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Graph {
        s.parse().unwrap()
    }

    #[test]
    fn text_format_round_trips() {
        assert_eq!(g("g:3:{12,23}").to_string(), "g:3:{12,23}");
        assert_eq!(g("g:0:{}").to_string(), "g:0:{}");
        assert_eq!(g("g:3:{23, 12}").to_string(), "g:3:{12,23}");
        assert_eq!(g("g:3:{21}").to_string(), "g:3:{12}");
        let wide = Graph::complete_bipartite(6, 6);
        assert_eq!(wide.to_string().parse::<Graph>().unwrap(), wide);
        assert!(wide.to_string().contains("1-7"));
    }

    #[test]
    fn parsing_rejects_malformed_graphs() {
        for bad in ["g:3:{11}", "g:3:{12,12}", "g:3:{14}", "g:3:{01}", "g:3:{12", "g:3{12}", "h:3:{}", "g:3:{1}"] {
            assert!(bad.parse::<Graph>().is_err(), "{bad} should be rejected");
        }
    }

    #[test]
    fn canonical_forms_of_small_examples() {
        let p = g("g:3:{12,23}");
        let q = g("g:3:{12,13}");
        assert_eq!(p.canonical_form().unwrap(), q.canonical_form().unwrap());
        let i3 = Graph::edgeless(3);
        assert_eq!(i3.canonical_form().unwrap().graph(), &i3);
    }

    #[test]
    fn induced_subgraphs() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.induced(&[0, 1]).unwrap(), Graph::complete(2));
        assert_eq!(k3.induced(&[]).unwrap(), Graph::empty());
        let p3 = g("g:3:{12,23}");
        assert_eq!(p3.induced(&[0, 2]).unwrap(), Graph::edgeless(2));
        assert!(p3.induced(&[0, 3]).is_err());
    }

    #[test]
    fn complements() {
        assert_eq!(Graph::complete(3).complement(), Graph::edgeless(3));
        assert_eq!(Graph::empty().complement(), Graph::empty());
        assert!(Graph::path(4).complement().is_isomorphic(&Graph::path(4)));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(Graph::complete(3).automorphism_count(), 6);
        assert_eq!(Graph::path(3).automorphism_count(), 2);
        assert_eq!(Graph::empty().automorphism_count(), 1);
        assert_eq!(Graph::cycle(5).automorphism_count(), 10);
        // beyond the canonical cap the backtracking path is used
        assert_eq!(Graph::complete_bipartite(5, 5).automorphism_count(), 2 * 120 * 120);
    }

    #[test]
    fn isomorphism_basics() {
        assert!(Graph::complete(3).is_isomorphic(&Graph::complete(3)));
        assert!(!Graph::path(3).is_isomorphic(&Graph::edgeless(3)));
        assert!(Graph::cycle(10).is_isomorphic(&Graph::cycle(10).relabel(&[3, 1, 4, 0, 5, 9, 2, 6, 8, 7])));
        assert!(!Graph::cycle(10).is_isomorphic(&Graph::path(10)));
    }

    #[test]
    fn enumeration_order_for_three_vertices() {
        let list = enumerate_graphs(3).unwrap();
        let edges: Vec<usize> = list.iter().map(|c| c.graph().edge_count()).collect();
        assert_eq!(edges, vec![0, 1, 2, 3]);
        assert_eq!(enumerate_graphs(0).unwrap().len(), 1);
        assert_eq!(enumerate_graphs(1).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_respects_cap() {
        assert!(enumerate_graphs(8).is_err());
        assert!(enumerate_graphs_with_cap(9, 9).is_err());
        assert_eq!(enumerate_graphs(6).unwrap().len(), 156);
    }
}
