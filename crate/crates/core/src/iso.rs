//! Exact canonical forms for graphs on at most 8 vertices, and generation of
//! connected graphs up to isomorphism by vertex extension.

use std::collections::BTreeSet;

use crate::graph::Graph;

pub const MAX_CANON_ORDER: usize = 8;

#[inline]
fn pair_bit(i: usize, j: usize) -> u32 {
    // i < j, graph6 column order
    (j * (j - 1) / 2 + i) as u32
}

/// Minimum edge mask over all relabelings that sort vertices by a
/// degree-refined invariant.
pub fn canonical_mask(g: &Graph) -> u64 {
    let n = g.n();
    assert!(
        n <= MAX_CANON_ORDER,
        "canonical forms are limited to {MAX_CANON_ORDER} vertices"
    );
    let deg = g.degrees();
    let signature = |v: usize| {
        let mut nd: Vec<usize> = g.neighbors(v).map(|u| deg[u]).collect();
        nd.sort_unstable();
        (deg[v], nd)
    };
    let mut verts: Vec<usize> = (0..n).collect();
    verts.sort_by_key(|&v| signature(v));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut last = None;
    for v in verts {
        let sig = signature(v);
        if last.as_ref() != Some(&sig) {
            cells.push(Vec::new());
            last = Some(sig);
        }
        cells.last_mut().unwrap().push(v);
    }
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(g, &cells, 0, &mut order, &mut used, &mut best);
    best
}

fn search(
    g: &Graph,
    cells: &[Vec<usize>],
    cell: usize,
    order: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut u64,
) {
    if cell == cells.len() {
        let mut mask = 0u64;
        for j in 1..order.len() {
            for i in 0..j {
                if g.has_edge(order[i], order[j]) {
                    mask |= 1 << pair_bit(i, j);
                }
            }
        }
        *best = (*best).min(mask);
        return;
    }
    let members = &cells[cell];
    let placed = members.iter().filter(|&&v| used[v]).count();
    if placed == members.len() {
        search(g, cells, cell + 1, order, used, best);
        return;
    }
    for &v in members {
        if used[v] {
            continue;
        }
        used[v] = true;
        order.push(v);
        search(g, cells, cell, order, used, best);
        order.pop();
        used[v] = false;
    }
}

pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty_unchecked(n);
    for j in 1..n {
        for i in 0..j {
            if mask >> pair_bit(i, j) & 1 == 1 {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Connected graphs on exactly `n` vertices, one per isomorphism class, as
/// canonical masks in increasing order.
pub fn connected_classes(n: usize) -> Vec<u64> {
    assert!((1..=MAX_CANON_ORDER).contains(&n));
    let mut level: BTreeSet<u64> = BTreeSet::from([0]);
    for size in 2..=n {
        let mut next = BTreeSet::new();
        for &mask in &level {
            let h = graph_from_mask(size - 1, mask);
            // every connected graph has a non-cut vertex
            for subset in 1u32..(1 << (size - 1)) {
                let mut g = Graph::empty_unchecked(size);
                for (a, b) in h.edges() {
                    g.add_edge(a, b);
                }
                for v in 0..size - 1 {
                    if subset >> v & 1 == 1 {
                        g.add_edge(v, size - 1);
                    }
                }
                next.insert(canonical_mask(&g));
            }
        }
        level = next;
    }
    level.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle};

    #[test]
    fn isomorphic_graphs_share_a_form() {
        let a = cycle(5).unwrap();
        let b = a.induced(&[0, 2, 4, 1, 3]);
        assert_ne!(a, b);
        assert_eq!(canonical_mask(&a), canonical_mask(&b));
        assert_ne!(
            canonical_mask(&a),
            canonical_mask(&complete_bipartite(2, 3).unwrap())
        );
    }

    #[test]
    fn known_class_counts() {
        // connected unlabeled graphs: 1, 1, 2, 6, 21, 112
        let counts: Vec<usize> = (1..=6).map(|n| connected_classes(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }
}
