//! Booksize and common-neighborhood statistics.

use serde::{Deserialize, Serialize};

use crate::graph::{BitIter, BlowupSpec, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BookStats {
    /// Largest number of common neighbors over all edges.
    pub bk: usize,
    /// Lexicographically first edge attaining `bk`; `None` when `bk = 0`.
    pub witness_edge: Option<(usize, usize)>,
    pub witness_pages: Vec<usize>,
    /// Largest number of common neighbors over all vertex pairs.
    pub k2t: usize,
}

pub fn booksize(g: &Graph) -> BookStats {
    let n = g.n();
    let mut bk = 0;
    let mut witness = None;
    let mut k2t = 0;
    for u in 0..n {
        for v in u + 1..n {
            let c = g.common_count(u, v);
            k2t = k2t.max(c);
            if c > bk && g.has_edge(u, v) {
                bk = c;
                witness = Some((u, v));
            }
        }
    }
    let witness_pages = witness.map_or_else(Vec::new, |(u, v)| g.common_neighbors(u, v));
    BookStats {
        bk,
        witness_edge: witness,
        witness_pages,
        k2t,
    }
}

/// Booksize alone, without the pair statistic.
pub fn booksize_value(g: &Graph) -> usize {
    g.edges()
        .map(|(u, v)| g.common_count(u, v))
        .max()
        .unwrap_or(0)
}

/// True iff `g` contains no `B_{r+1}`.
pub fn is_book_free(g: &Graph, r: usize) -> bool {
    g.edges().all(|(u, v)| g.common_count(u, v) <= r)
}

/// `bk(H[k]) = max_{ij ∈ E(H)} Σ_{l ∈ N(i) ∩ N(j)} k_l`, without building the blow-up.
pub fn blowup_booksize(spec: &BlowupSpec) -> usize {
    let h = spec.base();
    let k = spec.weights();
    h.edges()
        .map(|(i, j)| {
            let inter: Vec<u64> = h.row(i).iter().zip(h.row(j)).map(|(a, b)| a & b).collect();
            BitIter::new(&inter).map(|l| k[l]).sum::<usize>()
        })
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{book, complete, complete_bipartite, prism_blowup, s_plus};

    #[test]
    fn prism_family() {
        for k in 1..=5 {
            assert_eq!(booksize(&prism_blowup(k).unwrap()).bk, k);
        }
    }

    #[test]
    fn cliques_and_bipartite() {
        for n in 3..9 {
            let s = booksize(&complete(n).unwrap());
            assert_eq!(s.bk, n - 2);
            assert_eq!(s.witness_edge, Some((0, 1)));
            assert_eq!(s.witness_pages, (2..n).collect::<Vec<_>>());
        }
        let s = booksize(&complete_bipartite(3, 5).unwrap());
        assert_eq!((s.bk, s.k2t, s.witness_edge), (0, 5, None));
        assert!(s.witness_pages.is_empty());
    }

    #[test]
    fn book_freeness() {
        let g = s_plus(101, 2).unwrap();
        assert!(is_book_free(&g, 2));
        assert!(!is_book_free(&g, 1));
        assert!(is_book_free(&complete(3).unwrap(), 1));
        assert!(!is_book_free(&book(5).unwrap(), 4));
        assert_eq!(booksize(&book(5).unwrap()).bk, 5);
    }

    #[test]
    fn empty_graph() {
        let s = booksize(&Graph::empty(4).unwrap());
        assert_eq!((s.bk, s.k2t), (0, 0));
    }
}
