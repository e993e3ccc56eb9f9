#![allow(dead_code)]

use flagcalc::rational::{frac, int};
use flagcalc::{Graph, Rational, StepGraphon};
use itertools::Itertools;

/// Every labelled graph on `n` vertices.
pub fn all_labelled(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

/// Isomorphism by trying every bijection.
pub fn iso_brute(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.n();
    (0..n).permutations(n).any(|p| {
        (0..n).tuple_combinations().all(|(u, v)| a.has_edge(u, v) == b.has_edge(p[u], p[v]))
    })
}

/// One representative per isomorphism class, found by pairwise search.
pub fn classes_brute(n: usize) -> Vec<Graph> {
    let mut reps: Vec<Graph> = Vec::new();
    for g in all_labelled(n) {
        if !reps.iter().any(|r| iso_brute(r, &g)) {
            reps.push(g);
        }
    }
    reps
}

pub fn aut_brute(g: &Graph) -> usize {
    let n = g.n();
    (0..n)
        .permutations(n)
        .filter(|p| (0..n).tuple_combinations().all(|(u, v)| g.has_edge(u, v) == g.has_edge(p[u], p[v])))
        .count()
}

/// Induced density by subset counting.
pub fn density_brute(h: &Graph, g: &Graph) -> Rational {
    let k = h.n();
    if k > g.n() {
        return int(0);
    }
    let mut hits = 0i64;
    let mut total = 0i64;
    for s in (0..g.n()).combinations(k) {
        total += 1;
        if iso_brute(&g.induced(&s).unwrap(), h) {
            hits += 1;
        }
    }
    frac(hits, total)
}

/// Every graph on at most `n` vertices, up to isomorphism.
pub fn hosts_up_to(n: usize) -> Vec<Graph> {
    (0..=n)
        .flat_map(|m| flagcalc::enumerate_graphs(m).unwrap().iter().map(|c| c.graph().clone()).collect::<Vec<_>>())
        .collect()
}

pub fn graphon_suite() -> Vec<StepGraphon> {
    vec![
        StepGraphon::constant(frac(1, 2)).unwrap(),
        StepGraphon::constant(frac(1, 3)).unwrap(),
        StepGraphon::balanced_bipartite(),
        StepGraphon::new(
            vec![frac(1, 3), frac(2, 3)],
            vec![vec![int(1), frac(1, 4)], vec![frac(1, 4), int(0)]],
        )
        .unwrap(),
        StepGraphon::new(
            vec![frac(1, 2), frac(1, 4), frac(1, 4)],
            vec![
                vec![frac(1, 5), int(1), frac(1, 2)],
                vec![int(1), int(0), frac(2, 3)],
                vec![frac(1, 2), frac(2, 3), frac(3, 4)],
            ],
        )
        .unwrap(),
        StepGraphon::new(vec![frac(1, 3); 3], vec![vec![int(0), int(1), int(1)], vec![int(1), int(0), int(1)], vec![int(1), int(1), int(0)]]).unwrap(),
    ]
}
