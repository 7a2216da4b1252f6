//! Undirected simple graphs with bit-packed adjacency rows, the constructors
//! for every family the toolkit works with, and structural recognizers.

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// Vertex cap used when `BOOKSPECTRA_VERTEX_CAP` is unset.
pub const DEFAULT_VERTEX_CAP: usize = 512;

/// Environment variable overriding [`DEFAULT_VERTEX_CAP`].
pub const VERTEX_CAP_ENV: &str = "BOOKSPECTRA_VERTEX_CAP";

/// The process-wide vertex cap, read once from the environment.
pub fn vertex_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(VERTEX_CAP_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&c| c > 0)
            .unwrap_or(DEFAULT_VERTEX_CAP)
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{n} vertices exceeds the vertex cap of {cap}")]
    ExceedsCap { n: usize, cap: usize },
    #[error("complete bipartite part sizes must be positive (got {a}, {b})")]
    ZeroPartSize { a: usize, b: usize },
    #[error("a book needs at least one page")]
    ZeroPages,
    #[error("part size must be positive")]
    ZeroSplusPart,
    #[error("{s} does not divide m - 1 = {}", .m - 1)]
    SplusDivisibility { m: usize, s: usize },
    #[error("(m - 1)/s = {t} is below 2 for m = {m}, s = {s}")]
    SplusTooSmall { m: usize, s: usize, t: usize },
    #[error("blow-up needs one weight per base vertex ({base} vertices, {weights} weights)")]
    WeightCount { base: usize, weights: usize },
    #[error("blow-up weight for base vertex {0} must be at least 1")]
    ZeroWeight(usize),
}

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// Undirected simple graph on vertices `0..n`.
///
/// Row `v` is a bitset of `N(v)`; the edge count is cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.m)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        let cap = vertex_cap();
        if n > cap {
            return Err(GraphError::ExceedsCap { n, cap });
        }
        Ok(Self::empty_unchecked(n))
    }

    pub(crate) fn empty_unchecked(n: usize) -> Self {
        let stride = words_for(n);
        Graph {
            n,
            stride,
            rows: vec![0; n * stride],
            m: 0,
        }
    }

    /// Graph with exactly the given edges. Duplicates collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Bitset row of `N(v)`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> BitIter<'_> {
        BitIter::new(self.row(v))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// `|N(u) ∩ N(v)|`.
    #[inline]
    pub fn common_count(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `N(u) ∩ N(v)` in increasing order.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        let inter: Vec<u64> = self
            .row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| a & b)
            .collect();
        BitIter::new(&inter).collect()
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> bool {
        if self.has_edge(u, v) {
            return false;
        }
        self.rows[u * self.stride + v / 64] |= 1 << (v % 64);
        self.rows[v * self.stride + u / 64] |= 1 << (u % 64);
        self.m += 1;
        true
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        self.rows[u * self.stride + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.stride + u / 64] &= !(1 << (u % 64));
        self.m -= 1;
        true
    }

    /// Copy of this graph with edge `uv` added or removed.
    pub fn with_edge_toggled(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                v: u.max(v),
                n: self.n,
            });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let mut g = self.clone();
        if !g.remove_edge(u, v) {
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Subgraph induced on `vertices`, relabeled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty_unchecked(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Checks symmetry, empty diagonal and the cached edge count.
    pub fn check_invariants(&self) -> bool {
        let mut total = 0usize;
        for u in 0..self.n {
            if self.has_edge(u, u) {
                return false;
            }
            // no bits beyond n
            let row = self.row(u);
            let tail = self.n % 64;
            if tail != 0 && row[self.stride - 1] >> tail != 0 {
                return false;
            }
            for v in self.neighbors(u) {
                if !self.has_edge(v, u) {
                    return false;
                }
            }
            total += self.degree(u);
        }
        total == 2 * self.m
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![0u64; self.stride];
        let mut frontier = vec![0u64; self.stride];
        seen[0] = 1;
        frontier[0] = 1;
        let mut next = vec![0u64; self.stride];
        loop {
            next.iter_mut().for_each(|w| *w = 0);
            for u in BitIter::new(&frontier) {
                for (nw, rw) in next.iter_mut().zip(self.row(u)) {
                    *nw |= rw;
                }
            }
            let mut grew = false;
            for ((nw, sw), fw) in next.iter().zip(seen.iter_mut()).zip(frontier.iter_mut()) {
                *fw = nw & !*sw;
                if *fw != 0 {
                    grew = true;
                }
                *sw |= nw;
            }
            if !grew {
                break;
            }
        }
        seen.iter().map(|w| w.count_ones() as usize).sum::<usize>() == self.n
    }

    /// 2-coloring, or an odd closed walk when none exists.
    pub fn bipartition(&self) -> Bipartition {
        let mut color: Vec<Option<u8>> = vec![None; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(0);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for v in self.neighbors(u) {
                    match color[v] {
                        None => {
                            color[v] = Some(1 - cu);
                            parent[v] = u;
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => {
                            return Bipartition::OddWalk(odd_walk(&parent, u, v));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Bipartition::Bipartite(color.into_iter().map(|c| c.unwrap_or(0)).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartition(), Bipartition::Bipartite(_))
    }

    /// True iff the graph is `K_{a,b}` for some `a, b ≥ 1`.
    pub fn is_complete_bipartite(&self) -> bool {
        if self.n < 2 || !self.is_connected() {
            return false;
        }
        match self.bipartition() {
            Bipartition::Bipartite(colors) => {
                let a = colors.iter().filter(|&&c| c == 0).count();
                let b = self.n - a;
                a >= 1 && b >= 1 && self.m == a * b
            }
            Bipartition::OddWalk(_) => false,
        }
    }

    /// If this graph is `S⁺_{m,s}`, returns `s`.
    ///
    /// Scans edges in lexicographic order and returns on the first edge whose
    /// removal leaves `K_{s,t}` with `t ≥ 2` and both endpoints on the `t` side.
    pub fn splus_part(&self) -> Option<usize> {
        if self.m < 3 {
            return None;
        }
        // s(n - s) = m - 1 must be solvable
        let n = self.n;
        if !(1..n).any(|s| s * (n - s) == self.m - 1) {
            return None;
        }
        let mut h = self.clone();
        for (u, v) in self.edges() {
            h.remove_edge(u, v);
            if h.is_complete_bipartite() {
                if let Bipartition::Bipartite(colors) = h.bipartition() {
                    if colors[u] == colors[v] {
                        let t = colors.iter().filter(|&&c| c == colors[u]).count();
                        let s = n - t;
                        if t >= 2 {
                            return Some(s);
                        }
                    }
                }
            }
            h.add_edge(u, v);
        }
        None
    }

    /// Some pair of distinct vertices has at least two common neighbors.
    pub fn has_c4(&self) -> bool {
        (0..self.n).any(|u| (u + 1..self.n).any(|v| self.common_count(u, v) >= 2))
    }

    /// True iff the graph is `K_{1,n-1}` with `n ≥ 2`.
    pub fn is_star(&self) -> bool {
        self.n >= 2 && self.m == self.n - 1 && (0..self.n).any(|v| self.degree(v) == self.n - 1)
    }
}

fn odd_walk(parent: &[usize], u: usize, v: usize) -> Vec<usize> {
    let path_to_root = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    // root .. u, then v .. root
    let mut walk: Vec<usize> = path_to_root(u).into_iter().rev().collect();
    walk.extend(path_to_root(v));
    walk
}

/// Outcome of a 2-coloring attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    /// Color (0 or 1) per vertex; every edge joins different colors.
    Bipartite(Vec<u8>),
    /// Closed walk `w[0], ..., w[k]` with `w[0] == w[k]` and `k` odd.
    OddWalk(Vec<usize>),
}

/// Iterator over the set bits of a word slice.
pub struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> BitIter<'a> {
    pub fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            idx: 0,
            cur: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// Base graph plus a positive multiplicity per base vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupSpec {
    base: Graph,
    weights: Vec<usize>,
}

impl BlowupSpec {
    pub fn new(base: Graph, weights: Vec<usize>) -> Result<Self, GraphError> {
        if weights.len() != base.n() {
            return Err(GraphError::WeightCount {
                base: base.n(),
                weights: weights.len(),
            });
        }
        if let Some(i) = weights.iter().position(|&k| k == 0) {
            return Err(GraphError::ZeroWeight(i));
        }
        Ok(BlowupSpec { base, weights })
    }

    /// Every base vertex gets the same weight.
    pub fn uniform(base: Graph, k: usize) -> Result<Self, GraphError> {
        let n = base.n();
        Self::new(base, vec![k; n])
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.iter().sum()
    }

    /// `Σ_{ij ∈ E(H)} k_i k_j`.
    pub fn edge_count(&self) -> usize {
        self.base
            .edges()
            .map(|(i, j)| self.weights[i] * self.weights[j])
            .sum()
    }
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    if a == 0 || b == 0 {
        return Err(GraphError::ZeroPartSize { a, b });
    }
    let mut g = Graph::empty(a + b)?;
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// `B_r`: spine `(0, 1)` with pages `2..r+2`.
pub fn book(r: usize) -> Result<Graph, GraphError> {
    if r == 0 {
        return Err(GraphError::ZeroPages);
    }
    let mut g = Graph::empty(r + 2)?;
    g.add_edge(0, 1);
    for p in 2..r + 2 {
        g.add_edge(0, p);
        g.add_edge(1, p);
    }
    Ok(g)
}

/// `S⁺_{m,s}`: `K_{s,t}` with `t = (m-1)/s` plus one edge inside the `t` side.
///
/// Vertices `0..s` form the small side; the extra edge joins `s` and `s + 1`.
pub fn s_plus(m: usize, s: usize) -> Result<Graph, GraphError> {
    if s == 0 {
        return Err(GraphError::ZeroSplusPart);
    }
    if m < 1 || !(m - 1).is_multiple_of(s) {
        return Err(GraphError::SplusDivisibility { m, s });
    }
    let t = (m - 1) / s;
    if t < 2 {
        return Err(GraphError::SplusTooSmall { m, s, t });
    }
    let mut g = complete_bipartite(s, t)?;
    g.add_edge(s, s + 1);
    Ok(g)
}

/// Replace base vertex `i` by an independent set of size `k_i` and each base
/// edge by a complete bipartite graph. Blocks are laid out in base order.
pub fn blow_up(spec: &BlowupSpec) -> Result<Graph, GraphError> {
    let n = spec.vertex_count();
    let mut g = Graph::empty(n)?;
    let mut offset = Vec::with_capacity(spec.weights.len());
    let mut acc = 0;
    for &k in &spec.weights {
        offset.push(acc);
        acc += k;
    }
    for (i, j) in spec.base.edges() {
        for a in offset[i]..offset[i] + spec.weights[i] {
            for b in offset[j]..offset[j] + spec.weights[j] {
                g.add_edge(a, b);
            }
        }
    }
    Ok(g)
}

/// `C₃□`: triangles `{0,1,2}`, `{3,4,5}` joined by the matching `i ~ i+3`.
pub fn triangular_prism() -> Graph {
    let edges = [
        (0, 1),
        (0, 2),
        (1, 2),
        (3, 4),
        (3, 5),
        (4, 5),
        (0, 3),
        (1, 4),
        (2, 5),
    ];
    Graph::from_edges(6, &edges).expect("prism fits every cap")
}

/// `C₃□[k]`.
pub fn prism_blowup(k: usize) -> Result<Graph, GraphError> {
    blow_up(&BlowupSpec::uniform(triangular_prism(), k)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_ok(g: &Graph) {
        assert!(g.check_invariants(), "invariants broken: {g:?}");
    }

    #[test]
    fn from_edges_basics() {
        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(k3.m(), 3);
        assert_ok(&k3);
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.degrees(), vec![1, 1]);
        let dup = Graph::from_edges(4, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(dup.m(), 1);
        assert_ok(&dup);
    }

    #[test]
    fn from_edges_errors() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { v: 3, n: 3 })
        );
        assert_eq!(
            Graph::from_edges(3, &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert!(matches!(
            Graph::empty(100_000),
            Err(GraphError::ExceedsCap { .. })
        ));
    }

    #[test]
    fn complete_bipartite_family() {
        let star = complete_bipartite(1, 4).unwrap();
        assert_eq!(star.m(), 4);
        assert!(star.is_star());
        let k34 = complete_bipartite(3, 4).unwrap();
        assert_eq!(k34.m(), 12);
        assert_eq!(k34.degrees(), vec![4, 4, 4, 3, 3, 3, 3]);
        let c4 = complete_bipartite(2, 2).unwrap();
        assert_eq!(c4, cycle(4).unwrap().induced(&[0, 2, 1, 3]));
        assert!(complete_bipartite(0, 3).is_err());
        assert_ok(&k34);
    }

    #[test]
    fn books() {
        assert_eq!(book(1).unwrap(), complete(3).unwrap());
        let b2 = book(2).unwrap();
        assert_eq!((b2.n(), b2.m()), (4, 5));
        let b5 = book(5).unwrap();
        assert_eq!((b5.n(), b5.m()), (7, 11));
        assert_eq!(book(0), Err(GraphError::ZeroPages));
    }

    #[test]
    fn splus_constructor() {
        let g = s_plus(5, 1).unwrap();
        assert_eq!((g.n(), g.m()), (5, 5));
        // exactly one triangle
        let mut triangles = 0;
        for a in 0..5 {
            for b in a + 1..5 {
                for c in b + 1..5 {
                    if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                        triangles += 1;
                    }
                }
            }
        }
        assert_eq!(triangles, 1);
        let g = s_plus(101, 2).unwrap();
        assert_eq!((g.n(), g.m()), (52, 101));
        assert!(!g.is_bipartite());
        assert_eq!(
            s_plus(17, 3),
            Err(GraphError::SplusDivisibility { m: 17, s: 3 })
        );
        assert!(matches!(
            s_plus(3, 2),
            Err(GraphError::SplusTooSmall { .. })
        ));
        assert!(s_plus(10, 0).is_err());
    }

    #[test]
    fn blowups() {
        for k in 1..=4 {
            let g = prism_blowup(k).unwrap();
            assert_eq!((g.n(), g.m()), (6 * k, 9 * k * k));
            assert!(g.degrees().iter().all(|&d| d == 3 * k));
            assert_ok(&g);
        }
        let h = cycle(5).unwrap();
        assert_eq!(
            blow_up(&BlowupSpec::uniform(h.clone(), 1).unwrap()).unwrap(),
            h
        );
        let k2 = complete(2).unwrap();
        let g = blow_up(&BlowupSpec::new(k2, vec![2, 3]).unwrap()).unwrap();
        assert_eq!(g, complete_bipartite(2, 3).unwrap());
        assert!(BlowupSpec::new(complete(2).unwrap(), vec![1]).is_err());
        assert!(BlowupSpec::new(complete(2).unwrap(), vec![1, 0]).is_err());
        let big = BlowupSpec::uniform(complete(2).unwrap(), 10_000).unwrap();
        assert!(matches!(blow_up(&big), Err(GraphError::ExceedsCap { .. })));
    }

    #[test]
    fn prism() {
        let p = triangular_prism();
        assert_eq!((p.n(), p.m()), (6, 9));
        assert!(p.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn connectivity_and_bipartiteness() {
        let k34 = complete_bipartite(3, 4).unwrap();
        assert!(k34.is_connected() && k34.is_bipartite());
        let c5 = cycle(5).unwrap();
        assert!(c5.is_connected() && !c5.is_bipartite());
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two.is_connected());
        assert_eq!(two.components(), vec![vec![0, 1], vec![2, 3]]);
        match c5.bipartition() {
            Bipartition::OddWalk(w) => {
                assert_eq!(w.first(), w.last());
                assert_eq!((w.len() - 1) % 2, 1);
            }
            other => panic!("expected odd walk, got {other:?}"),
        }
    }

    #[test]
    fn recognizers() {
        assert!(complete_bipartite(2, 5).unwrap().is_complete_bipartite());
        assert!(!cycle(6).unwrap().is_complete_bipartite());
        assert!(!complete(3).unwrap().is_complete_bipartite());
        assert_eq!(s_plus(101, 2).unwrap().splus_part(), Some(2));
        assert_eq!(complete_bipartite(3, 4).unwrap().splus_part(), None);
        assert_eq!(book(2).unwrap().splus_part(), Some(2));
        assert!(complete_bipartite(2, 2).unwrap().has_c4());
        let k19 = complete_bipartite(1, 9).unwrap();
        assert!(k19.is_star() && !k19.has_c4());
        let k3 = complete(3).unwrap();
        assert!(!k3.is_star() && !k3.has_c4());
    }

    #[test]
    fn wide_rows() {
        // rows spanning several words
        let g = complete_bipartite(70, 3).unwrap();
        assert_ok(&g);
        assert_eq!(g.degree(72), 70);
        assert!(g.is_complete_bipartite());
        assert_eq!(g.common_count(70, 71), 70);
    }
}
