//! Materializes the Perron-weight partition around a maximum-weight vertex
//! `u*` on a concrete graph, checks the two second-neighborhood eigen
//! identities, and evaluates each claim-level inequality numerically.
//!
//! Notation: `U = N(u*)`, `W = V ∖ ({u*} ∪ U)`, and all weights are
//! normalized so that `x_{u*} = 1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::booksize::booksize_value;
use crate::graph::Graph;
use crate::spectral::SpectralCertificate;

/// Set memberships decided by a margin below this are marked fragile.
pub const FRAGILITY_MARGIN: f64 = 1e-9;
/// Allowed negative slack on claim margins.
pub const CLAIM_TOL: f64 = 1e-6;
/// Required relative width of the certificate a trace is built from.
pub const TRACE_CERT_WIDTH: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TraceError {
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("certificate not converged or too wide (width {width:e}, rho {rho})")]
    Unconverged { width: f64, rho: f64 },
    #[error("certificate has {got} coordinates for a graph on {n} vertices")]
    PerronLength { n: usize, got: usize },
    #[error("page bound r must be at least 1")]
    ZeroPageBound,
    #[error("parameter c must be positive, got {0}")]
    BadC(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OwnedEdge {
    pub edge: (usize, usize),
    /// Endpoint with the larger weight; the smaller index on exact ties.
    pub owner: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UVertex {
    pub vertex: usize,
    pub d_u: usize,
    pub d_w: usize,
    pub d_w_star: usize,
    /// Neighbors in `W ∖ W*`.
    pub d_w_rest: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WVertex {
    pub vertex: usize,
    pub d_u: usize,
    pub d_w: usize,
    /// `d_U(w)(1 − x_w) + ½ d_W(w)`.
    pub f: f64,
    /// `Σ x_v` over the non-neighbors `v` of `w` in `U`.
    pub non_neighbor_mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VStarVertex {
    pub vertex: usize,
    pub beta: f64,
    /// Non-neighbors of the vertex inside `W*`.
    pub w_star_non_neighbors: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fragility {
    pub decision: String,
    pub vertices: Vec<usize>,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub n: usize,
    pub m: usize,
    pub rho: f64,
    pub r: usize,
    pub c: f64,
    /// `c` outside `{1, 2}`.
    pub c_nonstandard: bool,
    pub bk: usize,
    pub splus: Option<usize>,
    pub u_star: usize,
    pub degree_u_star: usize,
    pub u: Vec<usize>,
    pub w: Vec<usize>,
    /// `x_v / x_{u*}` for every vertex.
    pub lambda: Vec<f64>,
    pub w_star_threshold: f64,
    pub w_star_threshold_negative: bool,
    pub w_star: Vec<usize>,
    pub edges_u: Vec<(usize, usize)>,
    pub bad_edges: Vec<(usize, usize)>,
    pub estar: Vec<OwnedEdge>,
    pub u1: Vec<usize>,
    pub u2: Vec<usize>,
    pub v_star: Vec<VStarVertex>,
    pub e1: Vec<(usize, usize)>,
    pub e2: Vec<(usize, usize)>,
    pub e3: Vec<(usize, usize)>,
    pub u_detail: Vec<UVertex>,
    pub w_detail: Vec<WVertex>,
    pub residual_eq1: f64,
    pub residual_eq2: f64,
    pub fragile: Vec<Fragility>,
}

fn note_fragile(out: &mut Vec<Fragility>, decision: &str, vertices: Vec<usize>, margin: f64) {
    if margin.abs() < FRAGILITY_MARGIN {
        out.push(Fragility {
            decision: decision.to_string(),
            vertices,
            margin,
        });
    }
}

pub fn build_trace(
    g: &Graph,
    cert: &SpectralCertificate,
    r: usize,
    c: f64,
) -> Result<ProofTrace, TraceError> {
    let n = g.n();
    if g.m() == 0 {
        return Err(TraceError::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(TraceError::Disconnected);
    }
    if cert.perron.len() != n {
        return Err(TraceError::PerronLength {
            n,
            got: cert.perron.len(),
        });
    }
    if !cert.converged || cert.width() > TRACE_CERT_WIDTH * cert.rho_upper {
        return Err(TraceError::Unconverged {
            width: cert.width(),
            rho: cert.estimate,
        });
    }
    if r == 0 {
        return Err(TraceError::ZeroPageBound);
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(TraceError::BadC(c));
    }
    let rho = cert.estimate;
    let mut fragile = Vec::new();

    let mut u_star = 0;
    for v in 1..n {
        if cert.perron[v] > cert.perron[u_star] {
            u_star = v;
        }
    }
    let top = cert.perron[u_star];
    let x: Vec<f64> = cert.perron.iter().map(|&v| v / top).collect();
    for (v, &xv) in x.iter().enumerate() {
        if v != u_star {
            note_fragile(&mut fragile, "u_star", vec![u_star, v], 1.0 - xv);
        }
    }

    let in_u: Vec<bool> = (0..n)
        .map(|v| v != u_star && g.has_edge(u_star, v))
        .collect();
    let u: Vec<usize> = (0..n).filter(|&v| in_u[v]).collect();
    let w: Vec<usize> = (0..n).filter(|&v| v != u_star && !in_u[v]).collect();

    let threshold = 1.0 - 4.5 * r as f64 / rho;
    let mut in_w_star = vec![false; n];
    for &v in &w {
        in_w_star[v] = x[v] >= threshold;
        note_fragile(&mut fragile, "w_star", vec![v], x[v] - threshold);
    }
    let w_star: Vec<usize> = w.iter().copied().filter(|&v| in_w_star[v]).collect();

    let edges_u: Vec<(usize, usize)> = g.edges().filter(|&(a, b)| in_u[a] && in_u[b]).collect();
    let mut bad_edges = Vec::new();
    let mut estar = Vec::new();
    for &(a, b) in &edges_u {
        note_fragile(&mut fragile, "bad_edge", vec![a, b], x[a] + x[b] - 1.0);
        if x[a] + x[b] >= 1.0 {
            bad_edges.push((a, b));
            // a < b, so ties go to a
            let owner = if x[b] > x[a] { b } else { a };
            if a != b {
                note_fragile(&mut fragile, "bad_edge_owner", vec![a, b], x[a] - x[b]);
            }
            estar.push(OwnedEdge {
                edge: (a, b),
                owner,
            });
        }
    }

    let u_detail: Vec<UVertex> = u
        .iter()
        .map(|&v| {
            let mut d = UVertex {
                vertex: v,
                d_u: 0,
                d_w: 0,
                d_w_star: 0,
                d_w_rest: 0,
            };
            for y in g.neighbors(v) {
                if in_u[y] {
                    d.d_u += 1;
                } else if y != u_star {
                    d.d_w += 1;
                    if in_w_star[y] {
                        d.d_w_star += 1;
                    } else {
                        d.d_w_rest += 1;
                    }
                }
            }
            d
        })
        .collect();

    let split = c * rho / 4.5;
    let mut u1 = Vec::new();
    let mut u2 = Vec::new();
    for d in &u_detail {
        if !estar.iter().any(|e| e.owner == d.vertex) {
            continue;
        }
        note_fragile(
            &mut fragile,
            "u1_u2_split",
            vec![d.vertex],
            d.d_w_rest as f64 - split,
        );
        if d.d_w_rest as f64 > split {
            u1.push(d.vertex);
        } else {
            u2.push(d.vertex);
        }
    }

    let mut e1 = Vec::new();
    let mut e2 = Vec::new();
    let mut v_star_ids = Vec::new();
    for e in &estar {
        if u1.contains(&e.owner) {
            e1.push(e.edge);
        } else if u2.contains(&e.owner) {
            e2.push(e.edge);
            let other = if e.edge.0 == e.owner {
                e.edge.1
            } else {
                e.edge.0
            };
            v_star_ids.push(other);
        }
    }
    v_star_ids.sort_unstable();
    v_star_ids.dedup();
    let e3: Vec<(usize, usize)> = edges_u
        .iter()
        .copied()
        .filter(|e| !e1.contains(e) && !e2.contains(e))
        .collect();

    let v_star: Vec<VStarVertex> = v_star_ids
        .iter()
        .map(|&v| {
            let beta = u2
                .iter()
                .filter(|&&y| g.has_edge(v, y))
                .map(|&y| x[y])
                .fold(f64::NEG_INFINITY, f64::max);
            let w_star_non_neighbors = w_star.iter().filter(|&&y| !g.has_edge(v, y)).count();
            VStarVertex {
                vertex: v,
                beta,
                w_star_non_neighbors,
            }
        })
        .collect();

    let w_detail: Vec<WVertex> = w
        .iter()
        .map(|&v| {
            let d_u = u.iter().filter(|&&y| g.has_edge(v, y)).count();
            let d_w = w.iter().filter(|&&y| g.has_edge(v, y)).count();
            let non_neighbor_mass = u
                .iter()
                .filter(|&&y| !g.has_edge(v, y))
                .map(|&y| x[y])
                .sum();
            WVertex {
                vertex: v,
                d_u,
                d_w,
                f: d_u as f64 * (1.0 - x[v]) + 0.5 * d_w as f64,
                non_neighbor_mass,
            }
        })
        .collect();

    let bk = booksize_value(g);
    let splus = g.splus_part();
    let mut trace = ProofTrace {
        n,
        m: g.m(),
        rho,
        r,
        c,
        c_nonstandard: c != 1.0 && c != 2.0,
        bk,
        splus,
        u_star,
        degree_u_star: u.len(),
        u,
        w,
        lambda: x,
        w_star_threshold: threshold,
        w_star_threshold_negative: threshold < 0.0,
        w_star,
        edges_u,
        bad_edges,
        estar,
        u1,
        u2,
        v_star,
        e1,
        e2,
        e3,
        u_detail,
        w_detail,
        residual_eq1: 0.0,
        residual_eq2: 0.0,
        fragile,
    };
    let (r1, r2) = trace.residuals();
    trace.residual_eq1 = r1;
    trace.residual_eq2 = r2;
    Ok(trace)
}

impl ProofTrace {
    fn edge_mass(&self) -> f64 {
        self.edges_u
            .iter()
            .map(|&(a, b)| self.lambda[a] + self.lambda[b])
            .sum()
    }

    /// Residuals of the two second-neighborhood identities, recomputed from
    /// the stored sets and values.
    ///
    /// First: `ρ² = d(u*) + Σ_{E(U)} (x_u + x_v) + Σ_W d_U(w) x_w`.
    /// Second: `ρ² = m − e(U) + Σ_{E(U)} (x_u + x_v) − Σ_W f(w)`.
    pub fn residuals(&self) -> (f64, f64) {
        let rho2 = self.rho * self.rho;
        let edge_mass = self.edge_mass();
        let w_mass: f64 = self
            .w_detail
            .iter()
            .map(|d| d.d_u as f64 * self.lambda[d.vertex])
            .sum();
        let eq1 = (rho2 - self.degree_u_star as f64 - edge_mass - w_mass).abs();
        let f_sum: f64 = self.w_detail.iter().map(|d| d.f).sum();
        let eq2 = (rho2 - (self.m - self.edges_u.len()) as f64 - edge_mass + f_sum).abs();
        (eq1, eq2)
    }

    /// Structural invariants of the partition; returns the first violation.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut seen = vec![0u8; self.n];
        seen[self.u_star] += 1;
        for &v in self.u.iter().chain(&self.w) {
            seen[v] += 1;
        }
        if seen.iter().any(|&s| s != 1) {
            return Err("U, W, {u*} do not partition V".into());
        }
        let mut parts: Vec<(usize, usize)> = self
            .e1
            .iter()
            .chain(&self.e2)
            .chain(&self.e3)
            .copied()
            .collect();
        parts.sort_unstable();
        let mut all = self.edges_u.clone();
        all.sort_unstable();
        if parts != all {
            return Err("E1, E2, E3 do not partition E(U)".into());
        }
        if self.u1.iter().any(|v| self.u2.contains(v)) {
            return Err("U1 and U2 intersect".into());
        }
        const EPS: f64 = 1e-12;
        for &v in self.u1.iter().chain(&self.u2) {
            if self.lambda[v] < 0.5 - EPS {
                return Err(format!("bad vertex {v} has weight below 1/2"));
            }
        }
        for vs in &self.v_star {
            if !(0.5 - EPS..=1.0 + EPS).contains(&vs.beta) {
                return Err(format!("beta of {} outside [1/2, 1]", vs.vertex));
            }
            if self.lambda[vs.vertex] > vs.beta + EPS {
                return Err(format!("weight of {} exceeds its beta", vs.vertex));
            }
        }
        if let Some(d) = self.w_detail.iter().find(|d| d.f < -EPS) {
            return Err(format!("f({}) is negative", d.vertex));
        }
        Ok(())
    }

    pub fn in_w_star(&self, v: usize) -> bool {
        self.w_star.binary_search(&v).is_ok()
    }

    /// Spine relation on a recognized `S⁺_{m,s}` whose `U` holds exactly the
    /// one extra edge and whose `W` vertices share `N(u*)`.
    pub fn splus_spine(&self) -> Option<SpineCheck> {
        let s = self.splus?;
        if self.edges_u.len() != 1 {
            return None;
        }
        let twin = self
            .w_detail
            .iter()
            .all(|d| d.d_u == self.u.len() && d.d_w == 0);
        if !twin || self.w.len() + 1 != s {
            return None;
        }
        let (a, b) = self.edges_u[0];
        let rho = self.rho;
        let expected = 2.0 * s as f64 / (rho - 1.0);
        Some(SpineCheck {
            s,
            spine: (a, b),
            rho_residual: (rho * rho - (self.m - 1) as f64 - expected).abs(),
            spine_sum: self.lambda[a] + self.lambda[b],
            spine_expected: expected,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpineCheck {
    pub s: usize,
    pub spine: (usize, usize),
    /// `|ρ² − (m − 1) − 2s/(ρ − 1)|`.
    pub rho_residual: f64,
    pub spine_sum: f64,
    /// `2s/(ρ − 1)`.
    pub spine_expected: f64,
}

impl SpineCheck {
    pub fn spine_deviation(&self) -> f64 {
        (self.spine_sum - self.spine_expected).abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub pass: bool,
    pub residual_eq1: f64,
    pub residual_eq2: f64,
    pub bound: f64,
}

/// Both identities within `1e-6 · m · x_{u*}`.
pub fn verify_identities(trace: &ProofTrace) -> IdentityReport {
    let (r1, r2) = trace.residuals();
    let bound = 1e-6 * trace.m as f64;
    IdentityReport {
        pass: r1 <= bound && r2 <= bound,
        residual_eq1: r1,
        residual_eq2: r2,
        bound,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    /// `Σ_{W∖W*} f(w) ≥ c r |U₁|`, strict when `U₁ ≠ ∅`.
    FarMass,
    /// `d_{W*}(u) ≥ (λ_u − c/4.5)ρ − (r + λ_u)` for `u ∈ U₂`.
    BadVertexReach,
    /// Each `v ∈ V*` has `≥ (β_v − c/4.5)ρ − 2r + (1 − β_v)` non-neighbors in `W*`.
    VStarNonNeighbors,
    /// `f(w) ≥ ¼ Σ_{v ∈ U, v ≁ w} x_v` for `w ∈ W*`.
    WStarDeficit,
    /// On `S⁺_{m,s}`: `ρ² = m − 1 + 2s/(ρ − 1)` and `x_{u₁} + x_{v₁} = 2s/(ρ − 1)`.
    SplusSpine,
}

impl ClaimKind {
    pub const ALL: [ClaimKind; 5] = [
        ClaimKind::FarMass,
        ClaimKind::BadVertexReach,
        ClaimKind::VStarNonNeighbors,
        ClaimKind::WStarDeficit,
        ClaimKind::SplusSpine,
    ];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub claim: ClaimKind,
    pub applicable: bool,
    pub holds: bool,
    /// `LHS − RHS` (worst case over the quantified set) for inequalities; the
    /// largest absolute deviation for the spine equalities. `None` when the
    /// claim is inapplicable or quantifies over an empty set.
    pub margin: Option<f64>,
    pub note: String,
}

impl ClaimCheck {
    fn not_applicable(claim: ClaimKind, note: impl Into<String>) -> Self {
        ClaimCheck {
            claim,
            applicable: false,
            holds: true,
            margin: None,
            note: note.into(),
        }
    }

    fn inequality(claim: ClaimKind, margin: Option<f64>, note: impl Into<String>) -> Self {
        ClaimCheck {
            claim,
            applicable: true,
            holds: margin.is_none_or(|m| m >= -CLAIM_TOL),
            margin,
            note: note.into(),
        }
    }
}

fn min_opt(it: impl Iterator<Item = f64>) -> Option<f64> {
    it.fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.min(v))))
}

pub fn verify_claims(trace: &ProofTrace) -> Vec<ClaimCheck> {
    let rho = trace.rho;
    let r = trace.r as f64;
    let c = trace.c;
    let book_free = trace.bk <= trace.r;
    let mut out = Vec::with_capacity(5);

    // far mass
    let far: f64 = trace
        .w_detail
        .iter()
        .filter(|d| !trace.in_w_star(d.vertex))
        .map(|d| d.f)
        .sum();
    let margin = far - c * r * trace.u1.len() as f64;
    let mut check = ClaimCheck::inequality(ClaimKind::FarMass, Some(margin), "");
    if !trace.u1.is_empty() {
        check.note = "U1 nonempty: strict inequality expected".into();
    }
    out.push(check);

    // bad vertex reach
    out.push(if !book_free {
        ClaimCheck::not_applicable(ClaimKind::BadVertexReach, "graph contains B_{r+1}")
    } else if trace.u2.is_empty() {
        ClaimCheck::not_applicable(ClaimKind::BadVertexReach, "U2 is empty")
    } else {
        let margin = min_opt(trace.u2.iter().map(|&v| {
            let lam = trace.lambda[v];
            let d = trace
                .u_detail
                .iter()
                .find(|d| d.vertex == v)
                .expect("U2 ⊆ U");
            d.d_w_star as f64 - ((lam - c / 4.5) * rho - (r + lam))
        }));
        ClaimCheck::inequality(ClaimKind::BadVertexReach, margin, "")
    });

    // V* non-neighbors
    out.push(if !book_free {
        ClaimCheck::not_applicable(ClaimKind::VStarNonNeighbors, "graph contains B_{r+1}")
    } else if trace.v_star.is_empty() {
        ClaimCheck::not_applicable(ClaimKind::VStarNonNeighbors, "V* is empty")
    } else {
        let margin = min_opt(trace.v_star.iter().map(|vs| {
            let b = vs.beta;
            vs.w_star_non_neighbors as f64 - ((b - c / 4.5) * rho - 2.0 * r + (1.0 - b))
        }));
        ClaimCheck::inequality(ClaimKind::VStarNonNeighbors, margin, "")
    });

    // W* deficit
    let big_enough = trace.m as f64 >= (9.0 * r).powi(2);
    out.push(if trace.v_star.is_empty() {
        ClaimCheck::not_applicable(ClaimKind::WStarDeficit, "V* is empty")
    } else if !big_enough {
        ClaimCheck::not_applicable(ClaimKind::WStarDeficit, "m < (9r)^2")
    } else if !book_free {
        ClaimCheck::not_applicable(ClaimKind::WStarDeficit, "graph contains B_{r+1}")
    } else if rho < 9.0 * r {
        ClaimCheck::not_applicable(ClaimKind::WStarDeficit, "rho < 9r")
    } else {
        let margin = min_opt(
            trace
                .w_detail
                .iter()
                .filter(|d| trace.in_w_star(d.vertex))
                .map(|d| d.f - 0.25 * d.non_neighbor_mass),
        );
        ClaimCheck::inequality(ClaimKind::WStarDeficit, margin, "")
    });

    // S+ spine
    out.push(match trace.splus_spine() {
        None => ClaimCheck::not_applicable(
            ClaimKind::SplusSpine,
            "not a recognized S+ with the expected partition",
        ),
        Some(sp) => {
            let dev = sp.rho_residual.max(sp.spine_deviation());
            ClaimCheck {
                claim: ClaimKind::SplusSpine,
                applicable: true,
                holds: dev <= CLAIM_TOL,
                margin: Some(dev),
                note: format!("s = {}", sp.s),
            }
        }
    });
    out
}
