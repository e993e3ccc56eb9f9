//! Canonical labelling by colour refinement followed by an exhaustive search
//! over the relabellings that respect the refined colour classes.
//!
//! Edge sets are encoded as a `u64` in which the pair `(a, b)`, `a < b`,
//! occupies bit `P - 1 - lex_index(a, b)` (`P` = number of pairs). A larger
//! code therefore corresponds to a lexicographically smaller sorted edge list
//! among graphs with the same number of edges; the canonical form is the
//! relabelling with the largest code.

use std::cell::RefCell;
use std::collections::HashMap;

use itertools::Itertools;

use crate::graph::Graph;

pub(crate) fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[inline]
pub(crate) fn pair_bit(a: usize, b: usize, n: usize) -> u32 {
    debug_assert!(a < b && b < n);
    let idx = a * n - a * (a + 1) / 2 + (b - a - 1);
    (pair_count(n) - 1 - idx) as u32
}

/// Code of `g` restricted to the ordered vertex list `verts` (position `i`
/// in the list becomes vertex `i`).
pub(crate) fn induced_raw_code(g: &Graph, verts: &[usize]) -> u64 {
    let m = verts.len();
    let mut code = 0u64;
    for a in 0..m {
        let row = g.row(verts[a]);
        for b in a + 1..m {
            if row >> verts[b] & 1 == 1 {
                code |= 1 << pair_bit(a, b, m);
            }
        }
    }
    code
}

fn code_under(g: &Graph, perm: &[usize]) -> u64 {
    let n = g.n();
    let mut code = 0u64;
    for (u, v) in g.edges() {
        let (a, b) = (perm[u], perm[v]);
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        code |= 1 << pair_bit(a, b, n);
    }
    code
}

/// Refined colour classes, in canonical order. The first `fixed` vertices
/// are individualised and keep their relative order.
fn refined_cells(g: &Graph, fixed: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut colour: Vec<usize> = (0..n).map(|v| v.min(fixed)).collect();
    let mut classes = colour.iter().copied().unique().count();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbours(v).map(|u| colour[u]).collect();
                // descending so that high-degree vertices sort first
                nb.sort_unstable_by(|a, b| b.cmp(a));
                (colour[v], nb)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
        distinct.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.len().cmp(&a.1.len())).then_with(|| b.1.cmp(&a.1)));
        distinct.dedup();
        let rank: HashMap<&(usize, Vec<usize>), usize> =
            distinct.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        colour = sigs.iter().map(|s| rank[s]).collect();
        if distinct.len() == classes {
            break;
        }
        classes = distinct.len();
    }
    let mut cells = vec![Vec::new(); classes];
    for v in 0..n {
        cells[colour[v]].push(v);
    }
    cells
}

/// Visits every relabelling that maps the `i`-th cell onto the `i`-th block
/// of consecutive positions.
fn for_each_cell_perm(cells: &[Vec<usize>], n: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm = vec![0usize; n];
    let mut offsets = Vec::with_capacity(cells.len());
    let mut off = 0;
    for c in cells {
        offsets.push(off);
        off += c.len();
    }
    let per_cell: Vec<Vec<Vec<usize>>> = cells
        .iter()
        .map(|c| c.iter().copied().permutations(c.len()).collect())
        .collect();
    if per_cell.is_empty() {
        visit(&perm);
        return;
    }
    for choice in per_cell.iter().map(|p| p.iter()).multi_cartesian_product() {
        for (ci, order) in choice.iter().enumerate() {
            for (j, &v) in order.iter().enumerate() {
                perm[v] = offsets[ci] + j;
            }
        }
        visit(&perm);
    }
}

/// Canonical code and a relabelling (old vertex -> new position) attaining it.
pub(crate) fn canonical_labelling(g: &Graph, fixed: usize) -> (u64, Vec<usize>) {
    let n = g.n();
    let cells = refined_cells(g, fixed);
    let mut best = (0u64, (0..n).collect::<Vec<_>>());
    let mut first = true;
    for_each_cell_perm(&cells, n, |perm| {
        let c = code_under(g, perm);
        if first || c > best.0 {
            best = (c, perm.to_vec());
            first = false;
        }
    });
    best
}

/// Number of colour-respecting relabellings that fix the edge set. Every
/// automorphism preserves refined colours, so this is `|Aut(g)|` when
/// `fixed == 0`.
pub(crate) fn automorphisms(g: &Graph, fixed: usize) -> u64 {
    let n = g.n();
    let cells = refined_cells(g, fixed);
    // identity positions: sort vertices by cell to get the reference labelling
    let mut reference = vec![0usize; n];
    let mut pos = 0;
    for c in &cells {
        for &v in c {
            reference[v] = pos;
            pos += 1;
        }
    }
    let target = code_under(g, &reference);
    let mut count = 0u64;
    for_each_cell_perm(&cells, n, |perm| {
        if code_under(g, perm) == target {
            count += 1;
        }
    });
    count
}

thread_local! {
    static CACHE: RefCell<HashMap<(u8, u8, u64), u64>> = RefCell::new(HashMap::new());
}

/// Canonical code of the graph on `n` vertices with raw code `raw`, where
/// the first `fixed` vertices are labelled. Memoised per thread.
pub(crate) fn canonical_code_cached(n: usize, fixed: usize, raw: u64) -> u64 {
    let key = (n as u8, fixed as u8, raw);
    if let Some(c) = CACHE.with(|c| c.borrow().get(&key).copied()) {
        return c;
    }
    let g = Graph::from_code(n, raw);
    let (code, _) = canonical_labelling(&g, fixed);
    CACHE.with(|c| c.borrow_mut().insert(key, code));
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_bits_are_a_bijection() {
        for n in 0..=8 {
            let mut seen = vec![false; pair_count(n)];
            for a in 0..n {
                for b in a + 1..n {
                    let bit = pair_bit(a, b, n) as usize;
                    assert!(!seen[bit]);
                    seen[bit] = true;
                }
            }
            assert!(seen.into_iter().all(|s| s));
        }
    }

    #[test]
    fn first_pair_is_most_significant() {
        assert_eq!(pair_bit(0, 1, 3), 2);
        assert_eq!(pair_bit(1, 2, 3), 0);
    }

    #[test]
    fn fixed_vertices_stay_in_place() {
        // star centred at vertex 2, label vertex 2 first
        let g = Graph::from_edges(3, &[(2, 0), (2, 1)]).unwrap();
        let cells = refined_cells(&g, 1);
        assert_eq!(cells[0], vec![0]);
    }
}
