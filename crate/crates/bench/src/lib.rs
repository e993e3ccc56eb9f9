//! Fixtures shared by the engine benchmarks.

use flagcalc::Graph;

/// Complete balanced bipartite graphs `K_{m,m}` for the given `m`.
pub fn bipartite_hosts(ms: impl IntoIterator<Item = usize>) -> Vec<Graph> {
    ms.into_iter().map(|m| Graph::complete_bipartite(m, m)).collect()
}

/// Cycles and their complements on `n` vertices, a mix of sparse and dense hosts.
pub fn mixed_hosts(n: usize) -> Vec<Graph> {
    let c = Graph::cycle(n);
    vec![c.complement(), c]
}
