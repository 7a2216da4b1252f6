//! Numerical exploration of the ratio `bk/√m` over graphs meeting a spectral
//! condition: simulated annealing over edge moves, and integer weight search
//! over blow-ups of small base graphs.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::booksize::{blowup_booksize, booksize_value};
use crate::graph::{blow_up, book, prism_blowup, s_plus, BlowupSpec, Graph, GraphError};
use crate::graph6::encode;
use crate::iso::{connected_classes, graph_from_mask};
use crate::spectral::{
    classify_nosal, classify_weak, quotient_rho, spectral_radius, spectral_radius_warm, weak_lhs,
    SpectralCertificate, ThreeValued, DEFAULT_TOL,
};

/// Penalty weight on the condition deficit.
const PENALTY: f64 = 10.0;
/// Tolerance of the warm-started certificates evaluated inside the search loop.
const SEARCH_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("annealing needs 4 <= n <= vertex cap, got {0}")]
    Order(usize),
    #[error("blow-up search needs 3 <= base_n_max <= 8, got {0}")]
    BaseOrder(usize),
    #[error("weight cap must be at least 1")]
    WeightCap,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// `ρ > √m`.
    StrictNosal,
    /// `ρ² ≥ m − 1 + 2/(ρ − 1)`.
    Weak,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::StrictNosal => "strict-nosal",
            Condition::Weak => "weak",
        })
    }
}

impl FromStr for Condition {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "strict-nosal" => Ok(Condition::StrictNosal),
            "weak" => Ok(Condition::Weak),
            other => Err(format!(
                "unknown condition '{other}' (expected strict-nosal or weak)"
            )),
        }
    }
}

/// Which end of the ratio to chase.
///
/// `Minimize` additionally requires a triangle and excludes `S⁺_{m,s}`, the
/// setting in which the infimum of `bk/√m` is open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    #[default]
    Maximize,
    Minimize,
}

/// Certified status of `g` under a condition, and its margin
/// (`ρ_lower − √m`, or `h(ρ_lower) − (m − 1)`).
pub fn condition_status(
    cert: &SpectralCertificate,
    m: usize,
    condition: Condition,
) -> (ThreeValued, f64) {
    match condition {
        Condition::StrictNosal => (classify_nosal(cert, m), cert.rho_lower - (m as f64).sqrt()),
        Condition::Weak => match classify_weak(cert, m) {
            Ok(t) => (t, weak_lhs(cert.rho_lower) - (m as f64 - 1.0)),
            Err(_) => (ThreeValued::CertifiedNo, cert.rho_lower - 1.0 - m as f64),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub t0: f64,
    pub factor: f64,
    /// Steps per restart; `None` means `200 n²`.
    pub steps: Option<u64>,
    pub restarts: usize,
    pub record_trajectory: bool,
    pub direction: Direction,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule {
            t0: 0.2,
            factor: 0.999,
            steps: None,
            restarts: 8,
            record_trajectory: false,
            direction: Direction::Maximize,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best_graph6: String,
    pub ratio: f64,
    pub condition: Condition,
    pub condition_margin: f64,
    /// False when no visited graph had a certified condition.
    pub feasible: bool,
    pub seed: u64,
    pub moves_evaluated: u64,
    pub trajectory: Option<Vec<(u64, f64)>>,
    pub direction: Direction,
    /// Base graph and weights for blow-up results.
    pub base_graph6: Option<String>,
    pub weights: Option<Vec<usize>>,
}

#[derive(Clone)]
struct Evaluated {
    graph: Graph,
    bk: usize,
    ratio: f64,
    status: ThreeValued,
    margin: f64,
    perron: Vec<f64>,
}

fn ratio_of(bk: usize, m: usize) -> f64 {
    if m == 0 {
        0.0
    } else {
        bk as f64 / (m as f64).sqrt()
    }
}

fn evaluate(g: Graph, start: Option<&[f64]>, condition: Condition) -> Evaluated {
    let cert = match start {
        Some(x) => spectral_radius_warm(&g, x, SEARCH_TOL),
        None => spectral_radius_warm(&g, &vec![1.0; g.n()], SEARCH_TOL),
    };
    let (status, margin) = condition_status(&cert, g.m(), condition);
    let bk = booksize_value(&g);
    Evaluated {
        ratio: ratio_of(bk, g.m()),
        bk,
        status,
        margin,
        perron: cert.perron,
        graph: g,
    }
}

fn admissible(e: &Evaluated, direction: Direction) -> bool {
    e.status == ThreeValued::CertifiedYes
        && match direction {
            Direction::Maximize => true,
            Direction::Minimize => e.bk >= 1 && e.graph.splus_part().is_none(),
        }
}

fn score(e: &Evaluated, direction: Direction) -> f64 {
    let deficit = (-e.margin).max(0.0);
    match direction {
        Direction::Maximize => e.ratio - PENALTY * deficit,
        Direction::Minimize => {
            let triangle_free = if e.bk == 0 { 1.0 } else { 0.0 };
            -e.ratio - PENALTY * deficit - triangle_free
        }
    }
}

/// `true` if `a` beats `b`: better ratio, then lexicographically smaller graph6.
fn better(direction: Direction, a: (f64, &str), b: (f64, &str)) -> bool {
    let ord = match direction {
        Direction::Maximize => a.0.partial_cmp(&b.0),
        Direction::Minimize => b.0.partial_cmp(&a.0),
    }
    .unwrap_or(Ordering::Equal);
    ord == Ordering::Greater || (ord == Ordering::Equal && a.1 < b.1)
}

/// Known structures on exactly `n` vertices, tried as restart seeds.
pub fn seed_graphs(n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    if n.is_multiple_of(6) {
        if let Ok(g) = prism_blowup(n / 6) {
            out.push(g);
        }
    }
    if n >= 3 {
        out.extend(s_plus(n, 1).ok());
        out.extend(book(n - 2).ok());
    }
    if n >= 4 {
        // K4 joined to an independent set
        if let Ok(mut g) = Graph::empty(n) {
            for u in 0..4 {
                for v in u + 1..n {
                    g.add_edge(u, v);
                }
            }
            out.push(g);
        }
    }
    out
}

fn random_connected(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty_unchecked(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                g.add_edge(u, v);
            }
        }
    }
    let comps = g.components();
    for pair in comps.windows(2) {
        g.add_edge(pair[0][0], pair[1][0]);
    }
    g
}

/// One random edge move; `None` if the move is impossible or disconnects.
fn propose(g: &Graph, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let n = g.n();
    let max_edges = n * (n - 1) / 2;
    let mut h = g.clone();
    let pick_pair = |rng: &mut ChaCha8Rng| {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        (u, v)
    };
    match rng.gen_range(0..3) {
        0 => {
            let (u, v) = pick_pair(rng);
            if !h.add_edge(u, v) {
                return None;
            }
        }
        1 => {
            let (u, v) = pick_pair(rng);
            if !h.remove_edge(u, v) {
                return None;
            }
        }
        _ => {
            if g.m() == 0 || g.m() == max_edges {
                return None;
            }
            let (a, b) = pick_pair(rng);
            let (c, d) = pick_pair(rng);
            if !g.has_edge(a, b) || g.has_edge(c, d) {
                return None;
            }
            h.remove_edge(a, b);
            h.add_edge(c, d);
        }
    }
    h.is_connected().then_some(h)
}

struct RestartOutcome {
    best: Option<Evaluated>,
    moves: u64,
    trajectory: Vec<(u64, f64)>,
}

fn anneal_once(
    start: Graph,
    condition: Condition,
    schedule: &Schedule,
    steps: u64,
    rng: &mut ChaCha8Rng,
) -> RestartOutcome {
    let direction = schedule.direction;
    let mut current = evaluate(start, None, condition);
    let mut current_score = score(&current, direction);
    let mut best = admissible(&current, direction).then(|| current.clone());
    let mut temperature = schedule.t0;
    let mut moves = 0;
    let mut trajectory = Vec::new();
    let sample_every = (steps / 64).max(1);
    for step in 0..steps {
        if let Some(h) = propose(&current.graph, rng) {
            moves += 1;
            let cand = evaluate(h, Some(&current.perron), condition);
            let cand_score = score(&cand, direction);
            let delta = cand_score - current_score;
            let accept = delta >= 0.0
                || (temperature > 0.0 && rng.gen::<f64>() < (delta / temperature).exp());
            if accept {
                if admissible(&cand, direction) {
                    let wins = best.as_ref().is_none_or(|b| {
                        better(
                            direction,
                            (cand.ratio, &encode(&cand.graph)),
                            (b.ratio, &encode(&b.graph)),
                        )
                    });
                    if wins {
                        best = Some(cand.clone());
                    }
                }
                current = cand;
                current_score = cand_score;
            }
        }
        temperature *= schedule.factor;
        if schedule.record_trajectory && step % sample_every == 0 {
            trajectory.push((step, best.as_ref().map_or(f64::NAN, |b| b.ratio)));
        }
    }
    RestartOutcome {
        best,
        moves,
        trajectory,
    }
}

/// Fresh all-ones certificate for a reported graph.
fn reverify(g: &Graph, condition: Condition) -> (ThreeValued, f64) {
    match spectral_radius(g, DEFAULT_TOL) {
        Ok(cert) => condition_status(&cert, g.m(), condition),
        Err(_) => (ThreeValued::CertifiedNo, f64::NEG_INFINITY),
    }
}

pub fn anneal_search(
    n: usize,
    condition: Condition,
    seed: u64,
    schedule: &Schedule,
) -> Result<SearchResult, SearchError> {
    if n < 4 || n > crate::graph::vertex_cap() {
        return Err(SearchError::Order(n));
    }
    anneal_unchecked(n, condition, seed, schedule)
}

/// Annealing without the `n ≥ 4` floor; small orders are handy for exhaustive
/// cross-checks.
pub fn anneal_unchecked(
    n: usize,
    condition: Condition,
    seed: u64,
    schedule: &Schedule,
) -> Result<SearchResult, SearchError> {
    if n < 2 || n > crate::graph::vertex_cap() {
        return Err(SearchError::Order(n));
    }
    let steps = schedule.steps.unwrap_or(200 * (n * n) as u64);
    let seeds = seed_graphs(n);
    let outcomes: Vec<RestartOutcome> = (0..schedule.restarts.max(1))
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let start = seeds
                .get(i)
                .cloned()
                .unwrap_or_else(|| random_connected(n, &mut rng));
            anneal_once(start, condition, schedule, steps, &mut rng)
        })
        .collect();

    let moves_evaluated = outcomes.iter().map(|o| o.moves).sum();
    let mut chosen: Option<(Evaluated, String, usize)> = None;
    for (i, o) in outcomes.iter().enumerate() {
        if let Some(b) = &o.best {
            // re-certify from scratch before reporting
            if reverify(&b.graph, condition).0 != ThreeValued::CertifiedYes {
                continue;
            }
            let g6 = encode(&b.graph);
            let wins = chosen.as_ref().is_none_or(|(c, cg6, _)| {
                better(schedule.direction, (b.ratio, &g6), (c.ratio, cg6))
            });
            if wins {
                chosen = Some((b.clone(), g6, i));
            }
        }
    }
    let trajectory = schedule.record_trajectory.then(|| {
        outcomes[chosen.as_ref().map_or(0, |c| c.2)]
            .trajectory
            .clone()
    });
    Ok(match chosen {
        Some((b, g6, _)) => {
            let (_, margin) = reverify(&b.graph, condition);
            SearchResult {
                best_graph6: g6,
                ratio: b.ratio,
                condition,
                condition_margin: margin,
                feasible: true,
                seed,
                moves_evaluated,
                trajectory,
                direction: schedule.direction,
                base_graph6: None,
                weights: None,
            }
        }
        None => SearchResult {
            best_graph6: String::new(),
            ratio: f64::NAN,
            condition,
            condition_margin: f64::NAN,
            feasible: false,
            seed,
            moves_evaluated,
            trajectory,
            direction: schedule.direction,
            base_graph6: None,
            weights: None,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlowupOptions {
    pub max_weight: usize,
    pub direction: Direction,
}

impl Default for BlowupOptions {
    fn default() -> Self {
        BlowupOptions {
            max_weight: 64,
            direction: Direction::Maximize,
        }
    }
}

#[derive(Clone)]
struct WeightPoint {
    weights: Vec<usize>,
    ratio: f64,
    status: ThreeValued,
    score: f64,
}

fn evaluate_weights(
    base: &Graph,
    weights: &[usize],
    condition: Condition,
    direction: Direction,
) -> WeightPoint {
    let spec =
        BlowupSpec::new(base.clone(), weights.to_vec()).expect("weights validated by caller");
    let m = spec.edge_count();
    let bk = blowup_booksize(&spec);
    let ratio = ratio_of(bk, m);
    let cert = quotient_rho(&spec, SEARCH_TOL).expect("base graphs are connected");
    let (status, margin) = condition_status(&cert, m, condition);
    let deficit = (-margin).max(0.0);
    let score = match direction {
        Direction::Maximize => ratio - PENALTY * deficit,
        Direction::Minimize => -ratio - PENALTY * deficit,
    };
    WeightPoint {
        weights: weights.to_vec(),
        ratio,
        status,
        score,
    }
}

fn total(w: &[usize]) -> usize {
    w.iter().sum()
}

/// Ranks two feasible points: ratio first, then smaller total weight.
fn point_better(direction: Direction, a: &WeightPoint, b: &WeightPoint) -> bool {
    let ord = match direction {
        Direction::Maximize => a.ratio.partial_cmp(&b.ratio),
        Direction::Minimize => b.ratio.partial_cmp(&a.ratio),
    }
    .unwrap_or(Ordering::Equal);
    ord == Ordering::Greater || (ord == Ordering::Equal && total(&a.weights) < total(&b.weights))
}

/// Coordinate ascent over weights in `1..=max_weight` for one base graph.
/// Returns the best feasible point visited and the number of evaluations.
fn optimize_base(
    base: &Graph,
    condition: Condition,
    options: &BlowupOptions,
) -> (Option<WeightPoint>, u64) {
    let direction = options.direction;
    let n = base.n();
    let feasible = |p: &WeightPoint| {
        p.status == ThreeValued::CertifiedYes
            && (direction == Direction::Maximize || !is_splus_blowup(base, &p.weights))
    };
    let mut evals = 0u64;
    let mut best: Option<WeightPoint> = None;
    let consider = |p: &WeightPoint, best: &mut Option<WeightPoint>| {
        if feasible(p) && best.as_ref().is_none_or(|b| point_better(direction, p, b)) {
            *best = Some(p.clone());
        }
    };
    let mut current = evaluate_weights(base, &vec![1; n], condition, direction);
    evals += 1;
    consider(&current, &mut best);
    loop {
        let mut improved = false;
        for i in 0..n {
            let mut local = current.clone();
            for k in 1..=options.max_weight {
                if k == current.weights[i] {
                    continue;
                }
                let mut w = current.weights.clone();
                w[i] = k;
                let p = evaluate_weights(base, &w, condition, direction);
                evals += 1;
                consider(&p, &mut best);
                let gain = p.score > local.score
                    || (p.score == local.score && total(&p.weights) < total(&local.weights));
                if gain {
                    local = p;
                }
            }
            if local.weights != current.weights {
                current = local;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    (best, evals)
}

fn is_splus_blowup(base: &Graph, weights: &[usize]) -> bool {
    BlowupSpec::new(base.clone(), weights.to_vec())
        .ok()
        .and_then(|spec| blow_up(&spec).ok())
        .is_some_and(|g| g.splus_part().is_some())
}

/// Connected base graphs on `3..=base_n_max` vertices that contain a
/// triangle, one per isomorphism class, in canonical order.
pub fn triangle_bases(base_n_max: usize) -> Vec<Graph> {
    (3..=base_n_max)
        .flat_map(|n| {
            connected_classes(n)
                .into_iter()
                .map(move |mask| graph_from_mask(n, mask))
        })
        .filter(|g| booksize_value(g) >= 1)
        .collect()
}

pub fn blowup_search(
    base_n_max: usize,
    condition: Condition,
    options: &BlowupOptions,
) -> Result<SearchResult, SearchError> {
    if !(3..=8).contains(&base_n_max) {
        return Err(SearchError::BaseOrder(base_n_max));
    }
    if options.max_weight == 0 {
        return Err(SearchError::WeightCap);
    }
    let direction = options.direction;
    let bases = triangle_bases(base_n_max);
    let results: Vec<(Option<WeightPoint>, u64)> = bases
        .par_iter()
        .map(|b| optimize_base(b, condition, options))
        .collect();
    let moves_evaluated = results.iter().map(|r| r.1).sum();
    let mut chosen: Option<(usize, WeightPoint)> = None;
    for (i, (point, _)) in results.into_iter().enumerate() {
        let Some(p) = point else { continue };
        if chosen
            .as_ref()
            .is_none_or(|(_, c)| point_better(direction, &p, c))
        {
            chosen = Some((i, p));
        }
    }
    let infeasible = SearchResult {
        best_graph6: String::new(),
        ratio: f64::NAN,
        condition,
        condition_margin: f64::NAN,
        feasible: false,
        seed: 0,
        moves_evaluated,
        trajectory: None,
        direction,
        base_graph6: None,
        weights: None,
    };
    let Some((i, p)) = chosen else {
        return Ok(infeasible);
    };
    let spec = BlowupSpec::new(bases[i].clone(), p.weights.clone())?;
    let g = blow_up(&spec)?;
    let (status, margin) = reverify(&g, condition);
    if status != ThreeValued::CertifiedYes {
        return Ok(infeasible);
    }
    Ok(SearchResult {
        best_graph6: encode(&g),
        ratio: ratio_of(booksize_value(&g), g.m()),
        condition,
        condition_margin: margin,
        feasible: true,
        seed: 0,
        moves_evaluated,
        trajectory: None,
        direction,
        base_graph6: Some(encode(&bases[i])),
        weights: Some(p.weights),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(restarts: usize, steps: u64) -> Schedule {
        Schedule {
            steps: Some(steps),
            restarts,
            ..Schedule::default()
        }
    }

    #[test]
    fn triangle_only_at_three() {
        let r = anneal_unchecked(3, Condition::StrictNosal, 1, &quick(2, 200)).unwrap();
        assert!(r.feasible);
        assert_eq!(r.best_graph6, "Bw");
        assert!((r.ratio - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn deterministic() {
        let s = Schedule {
            record_trajectory: true,
            ..quick(3, 400)
        };
        let a = anneal_search(7, Condition::Weak, 9, &s).unwrap();
        let b = anneal_search(7, Condition::Weak, 9, &s).unwrap();
        assert_eq!(a, b);
        assert!(a.trajectory.is_some());
    }

    #[test]
    fn order_checks() {
        assert_eq!(
            anneal_search(3, Condition::Weak, 0, &quick(1, 1)),
            Err(SearchError::Order(3))
        );
        assert_eq!(
            blowup_search(2, Condition::Weak, &BlowupOptions::default()),
            Err(SearchError::BaseOrder(2))
        );
    }

    #[test]
    fn bases_up_to_four() {
        // K3, paw, diamond, K4
        assert_eq!(triangle_bases(4).len(), 4);
    }

    #[test]
    fn seeds_have_n_vertices() {
        for n in 4..14 {
            for g in seed_graphs(n) {
                assert_eq!(g.n(), n);
                assert!(g.is_connected());
            }
        }
    }
}
