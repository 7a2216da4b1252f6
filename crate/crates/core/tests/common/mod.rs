#![allow(dead_code)]

use bookspectra::Graph;
use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Largest adjacency eigenvalue from a dense symmetric eigensolver.
pub fn dense_rho(g: &Graph) -> f64 {
    let n = g.n();
    let a = DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    a.symmetric_eigenvalues()
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `G(n, p)` with `p` drawn per graph; components are chained together by an edge.
pub fn random_connected(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let p: f64 = rng.gen_range(0.05..0.95);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_edges(n, &edges).unwrap();
    let comps = g.components();
    for w in comps.windows(2) {
        edges.push((w[0][0], w[1][0]));
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_graph(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let p: f64 = rng.gen_range(0.0..1.0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}
