//! Exhaustive and streamed verification: labeled-graph enumeration, the
//! per-graph census with its predicate vocabulary, and the extremal-family
//! checks.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, BufRead};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::booksize::booksize;
use crate::graph::{prism_blowup, s_plus, triangular_prism, BlowupSpec, Graph, GraphError};
use crate::graph6::{encode, parse_graph6};
use crate::report::fmt_real;
use crate::spectral::{
    classify_nosal, classify_weak, quotient_rho, solve_splus_rho, spectral_radius, SpectralError,
    ThreeValued,
};
use crate::trace::build_trace;

/// Largest order the enumerator accepts; 8 needs explicit acknowledgment.
pub const MAX_ENUM_ORDER: usize = 8;
const BATCH: usize = 1 << 13;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("enumeration order {0} is outside 1..=8")]
    OrderOutOfRange(usize),
    #[error("n = 8 enumerates 2^28 graphs; pass the acknowledgment flag to proceed")]
    OrderEightNotAcknowledged,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

fn mask_connected(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    let mut adj = [0u16; MAX_ENUM_ORDER];
    let mut bits = mask;
    while bits != 0 {
        let k = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let (i, j) = pairs[k];
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
    }
    let full: u16 = ((1u32 << n) - 1) as u16;
    let mut seen: u16 = 1;
    let mut frontier: u16 = 1;
    while frontier != 0 {
        let mut next = 0u16;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == full
}

fn mask_graph(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let mut g = Graph::empty_unchecked(n);
    let mut bits = mask;
    while bits != 0 {
        let k = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let (i, j) = pairs[k];
        g.add_edge(i, j);
    }
    g
}

/// Every labeled simple graph on `n` vertices, by edge mask. Bit `k` of the
/// mask is the `k`-th pair in graph6 order (column by column).
#[derive(Debug, Clone)]
pub struct LabeledGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
    connected_only: bool,
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            if !self.connected_only || mask_connected(self.n, &self.pairs, mask) {
                return Some(mask_graph(self.n, &self.pairs, mask));
            }
        }
        None
    }
}

pub fn enumerate_labeled(
    n: usize,
    connected_only: bool,
    allow_eight: bool,
) -> Result<LabeledGraphs, VerifyError> {
    if !(1..=MAX_ENUM_ORDER).contains(&n) {
        return Err(VerifyError::OrderOutOfRange(n));
    }
    if n == MAX_ENUM_ORDER && !allow_eight {
        return Err(VerifyError::OrderEightNotAcknowledged);
    }
    let pairs = pair_list(n);
    Ok(LabeledGraphs {
        n,
        end: 1u64 << pairs.len(),
        pairs,
        next: 0,
        connected_only,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Predicate {
    /// (a) certified Nosal graphs contain a triangle.
    NosalTriangle,
    /// (b) `ρ ≥ √m` and triangle-free only for complete bipartite graphs.
    NikiforovEquality,
    /// (c) certified Nosal with `m ≥ 10` has a 4-cycle unless a star.
    C4OrStar,
    /// (d) certified Nosal has `bk > √m / 9`.
    BookSqrtM,
    /// (e) `m ≥ ⌊n²/4⌋ + 1` forces `bk ≥ n/6`.
    ErdosEdwards,
    /// (f) `bk ≤ r` and `m ≥ (9r)²` force `ρ ≤ √m`, equality only for complete bipartite.
    BookFreeBound,
    /// (g) connected non-bipartite `bk ≤ r` graphs meeting the weak condition.
    WeakCandidate,
    ThresholdNine,
    ThresholdTwoForty,
}

impl Predicate {
    pub const ASSERTED: [Predicate; 6] = [
        Predicate::NosalTriangle,
        Predicate::NikiforovEquality,
        Predicate::C4OrStar,
        Predicate::BookSqrtM,
        Predicate::ErdosEdwards,
        Predicate::BookFreeBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::NosalTriangle => "nosal-implies-triangle",
            Predicate::NikiforovEquality => "nikiforov-equality",
            Predicate::C4OrStar => "c4-or-star",
            Predicate::BookSqrtM => "book-exceeds-sqrt-m-over-9",
            Predicate::ErdosEdwards => "erdos-edwards",
            Predicate::BookFreeBound => "book-free-spectral-bound",
            Predicate::WeakCandidate => "weak-condition-candidate",
            Predicate::ThresholdNine => "m-at-least-81r2",
            Predicate::ThresholdTwoForty => "m-at-least-57600r2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Ok,
    Violation,
    NotApplicable,
    Recorded,
    Met,
    Unmet,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Ok => "ok",
            Outcome::Violation => "violation",
            Outcome::NotApplicable => "na",
            Outcome::Recorded => "recorded",
            Outcome::Met => "met",
            Outcome::Unmet => "unmet",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Flag {
    pub predicate: Predicate,
    pub outcome: Outcome,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.predicate.name(), self.outcome.name())
    }
}

impl Serialize for Flag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusRecord {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub connected: bool,
    pub bipartite: bool,
    pub complete_bipartite: bool,
    pub star: bool,
    pub has_c4: bool,
    pub bk: usize,
    pub k2t: usize,
    pub rho_lower: f64,
    pub rho_upper: f64,
    pub nosal: ThreeValued,
    /// `None` when the enclosure does not lie above 1.
    pub weak_condition: Option<ThreeValued>,
    pub s_plus: Option<usize>,
    pub flags: Vec<Flag>,
}

pub const CSV_HEADER: &str =
    "graph6,n,m,connected,bipartite,complete_bipartite,star,has_c4,bk,k2t,rho_lower,rho_upper,nosal,weak_condition,s_plus,flags";

impl CensusRecord {
    pub fn outcome(&self, p: Predicate) -> Option<Outcome> {
        self.flags
            .iter()
            .find(|f| f.predicate == p)
            .map(|f| f.outcome)
    }

    pub fn to_csv_row(&self) -> String {
        let flags: Vec<String> = self.flags.iter().map(|f| f.to_string()).collect();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.graph6,
            self.n,
            self.m,
            self.connected,
            self.bipartite,
            self.complete_bipartite,
            self.star,
            self.has_c4,
            self.bk,
            self.k2t,
            fmt_real(self.rho_lower),
            fmt_real(self.rho_upper),
            self.nosal,
            self.weak_condition.map_or("na", |w| w.as_str()),
            self.s_plus.map_or_else(String::new, |s| s.to_string()),
            flags.join(";"),
        )
    }

    pub fn to_json_line(&self) -> String {
        crate::report::to_json(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CensusConfig {
    /// Page bound `r`.
    pub r: usize,
    pub tol: f64,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            r: 1,
            tol: crate::spectral::DEFAULT_TOL,
        }
    }
}

/// Evaluates every field and predicate for one graph.
pub fn census_record(g: &Graph, cfg: &CensusConfig) -> CensusRecord {
    let n = g.n();
    let m = g.m();
    let connected = g.is_connected();
    let bipartite = g.is_bipartite();
    let complete_bipartite = g.is_complete_bipartite();
    let star = g.is_star();
    let has_c4 = g.has_c4();
    let stats = booksize(g);
    let bk = stats.bk;
    let (rho_lower, rho_upper, nosal, weak_condition) = match spectral_radius(g, cfg.tol) {
        Ok(cert) => (
            cert.rho_lower,
            cert.rho_upper,
            classify_nosal(&cert, m),
            classify_weak(&cert, m).ok(),
        ),
        // only n = 0 reaches here
        Err(_) => (0.0, 0.0, ThreeValued::CertifiedNo, None),
    };
    let s_plus = g.splus_part();

    let yes = nosal == ThreeValued::CertifiedYes;
    let at_least = nosal != ThreeValued::CertifiedNo;
    let r = cfg.r;
    let nine = m >= 81 * r * r;
    let two_forty = m >= 57_600 * r * r;

    let pick = |premise: bool, bad: bool| match (premise, bad) {
        (false, _) => Outcome::NotApplicable,
        (true, true) => Outcome::Violation,
        (true, false) => Outcome::Ok,
    };
    let mut flags = Vec::with_capacity(9);
    let mut push = |predicate, outcome| flags.push(Flag { predicate, outcome });
    push(Predicate::NosalTriangle, pick(yes, bk == 0));
    push(
        Predicate::NikiforovEquality,
        pick(at_least && bk == 0, !complete_bipartite),
    );
    push(Predicate::C4OrStar, pick(yes && m >= 10, !star && !has_c4));
    push(Predicate::BookSqrtM, pick(yes, 81 * bk * bk <= m));
    push(Predicate::ErdosEdwards, pick(m > n * n / 4, 6 * bk < n));
    push(
        Predicate::BookFreeBound,
        pick(
            bk <= r && nine,
            yes || (nosal == ThreeValued::Borderline && !complete_bipartite),
        ),
    );
    let weak_ok = matches!(
        weak_condition,
        Some(ThreeValued::CertifiedYes | ThreeValued::Borderline)
    );
    push(
        Predicate::WeakCandidate,
        if connected && !bipartite && bk <= r && weak_ok {
            Outcome::Recorded
        } else {
            Outcome::NotApplicable
        },
    );
    push(
        Predicate::ThresholdNine,
        if nine { Outcome::Met } else { Outcome::Unmet },
    );
    push(
        Predicate::ThresholdTwoForty,
        if two_forty {
            Outcome::Met
        } else {
            Outcome::Unmet
        },
    );

    CensusRecord {
        graph6: encode(g),
        n,
        m,
        connected,
        bipartite,
        complete_bipartite,
        star,
        has_c4,
        bk,
        k2t: stats.k2t,
        rho_lower,
        rho_upper,
        nosal,
        weak_condition,
        s_plus,
        flags,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalC {
    pub ratio: f64,
    pub graph6: String,
    pub m: usize,
    pub bk: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MalformedLine {
    pub line: usize,
    pub error: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct NosalCounts {
    pub certified_yes: u64,
    pub certified_no: u64,
    pub borderline: u64,
}

const EXAMPLES_KEPT: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusSummary {
    pub graphs: u64,
    pub r: usize,
    pub tol: f64,
    pub violations: BTreeMap<&'static str, u64>,
    /// First few offending graph6 strings per predicate.
    pub violation_examples: BTreeMap<&'static str, Vec<String>>,
    pub nosal: NosalCounts,
    /// Borderline Nosal records that are neither complete bipartite nor tight.
    pub borderline_unexplained: u64,
    pub weak_candidates: u64,
    pub weak_candidates_splus: u64,
    pub weak_candidates_threshold_met: u64,
    pub threshold_9r_met: u64,
    /// Minimum of `bk/√m` over certified Nosal graphs.
    pub empirical_c: Option<EmpiricalC>,
    pub malformed: Vec<MalformedLine>,
    pub runtime_secs: f64,
}

impl CensusSummary {
    pub fn new(cfg: &CensusConfig) -> Self {
        CensusSummary {
            graphs: 0,
            r: cfg.r,
            tol: cfg.tol,
            violations: Predicate::ASSERTED.iter().map(|p| (p.name(), 0)).collect(),
            violation_examples: BTreeMap::new(),
            nosal: NosalCounts::default(),
            borderline_unexplained: 0,
            weak_candidates: 0,
            weak_candidates_splus: 0,
            weak_candidates_threshold_met: 0,
            threshold_9r_met: 0,
            empirical_c: None,
            malformed: Vec::new(),
            runtime_secs: 0.0,
        }
    }

    pub fn absorb(&mut self, rec: &CensusRecord) {
        self.graphs += 1;
        for f in &rec.flags {
            match (f.predicate, f.outcome) {
                (p, Outcome::Violation) => {
                    *self.violations.entry(p.name()).or_default() += 1;
                    let ex = self.violation_examples.entry(p.name()).or_default();
                    if ex.len() < EXAMPLES_KEPT {
                        ex.push(rec.graph6.clone());
                    }
                }
                (Predicate::WeakCandidate, Outcome::Recorded) => {
                    self.weak_candidates += 1;
                    if rec.s_plus.is_some() {
                        self.weak_candidates_splus += 1;
                    }
                    if rec.outcome(Predicate::ThresholdTwoForty) == Some(Outcome::Met) {
                        self.weak_candidates_threshold_met += 1;
                    }
                }
                (Predicate::ThresholdNine, Outcome::Met) => self.threshold_9r_met += 1,
                _ => {}
            }
        }
        match rec.nosal {
            ThreeValued::CertifiedYes => {
                self.nosal.certified_yes += 1;
                let ratio = rec.bk as f64 / (rec.m as f64).sqrt();
                if self.empirical_c.as_ref().is_none_or(|e| ratio < e.ratio) {
                    self.empirical_c = Some(EmpiricalC {
                        ratio,
                        graph6: rec.graph6.clone(),
                        m: rec.m,
                        bk: rec.bk,
                    });
                }
            }
            ThreeValued::CertifiedNo => self.nosal.certified_no += 1,
            ThreeValued::Borderline => {
                self.nosal.borderline += 1;
                let tight = rec.rho_upper - rec.rho_lower <= self.tol * rec.rho_upper.max(1.0);
                if !rec.complete_bipartite && !tight {
                    self.borderline_unexplained += 1;
                }
            }
        }
    }

    pub fn total_violations(&self) -> u64 {
        self.violations.values().sum()
    }
}

/// Where census graphs come from.
pub enum CensusInput<R: BufRead> {
    Enumerate {
        n_min: usize,
        n_max: usize,
        connected_only: bool,
        allow_eight: bool,
    },
    Graph6(R),
}

fn flush_batch<F>(
    batch: &mut Vec<Graph>,
    cfg: &CensusConfig,
    summary: &mut CensusSummary,
    sink: &mut F,
) -> io::Result<()>
where
    F: FnMut(&CensusRecord) -> io::Result<()>,
{
    let records: Vec<CensusRecord> = batch.par_iter().map(|g| census_record(g, cfg)).collect();
    batch.clear();
    for rec in &records {
        summary.absorb(rec);
        sink(rec)?;
    }
    Ok(())
}

/// Streams records to `sink` in input order; batches are evaluated in parallel.
pub fn run_census<R, F>(
    input: CensusInput<R>,
    cfg: &CensusConfig,
    mut sink: F,
) -> Result<CensusSummary, VerifyError>
where
    R: BufRead,
    F: FnMut(&CensusRecord) -> io::Result<()>,
{
    let start = Instant::now();
    let mut summary = CensusSummary::new(cfg);
    let mut batch = Vec::with_capacity(BATCH);
    match input {
        CensusInput::Enumerate {
            n_min,
            n_max,
            connected_only,
            allow_eight,
        } => {
            // reject bad orders before any work is done
            let iters = (n_min..=n_max)
                .map(|n| enumerate_labeled(n, connected_only, allow_eight))
                .collect::<Result<Vec<_>, _>>()?;
            if iters.is_empty() {
                return Err(VerifyError::OrderOutOfRange(n_min));
            }
            for it in iters {
                for g in it {
                    batch.push(g);
                    if batch.len() == BATCH {
                        flush_batch(&mut batch, cfg, &mut summary, &mut sink)?;
                    }
                }
            }
        }
        CensusInput::Graph6(reader) => {
            for (idx, line) in reader.lines().enumerate() {
                let line = line?;
                let text = line.trim();
                if text.is_empty() {
                    continue;
                }
                match parse_graph6(text) {
                    Ok(g) => batch.push(g),
                    Err(e) => summary.malformed.push(MalformedLine {
                        line: idx + 1,
                        error: e.to_string(),
                    }),
                }
                if batch.len() == BATCH {
                    flush_batch(&mut batch, cfg, &mut summary, &mut sink)?;
                }
            }
        }
    }
    flush_batch(&mut batch, cfg, &mut summary, &mut sink)?;
    summary.runtime_secs = start.elapsed().as_secs_f64();
    Ok(summary)
}

/// In-memory census over a finite collection of graphs.
pub fn census<I: IntoIterator<Item = Graph>>(
    graphs: I,
    cfg: &CensusConfig,
) -> (Vec<CensusRecord>, CensusSummary) {
    let graphs: Vec<Graph> = graphs.into_iter().collect();
    let records: Vec<CensusRecord> = graphs.par_iter().map(|g| census_record(g, cfg)).collect();
    let mut summary = CensusSummary::new(cfg);
    for rec in &records {
        summary.absorb(rec);
    }
    (records, summary)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrismRow {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub bk: usize,
    pub rho_lower: f64,
    pub rho_upper: f64,
    pub rho: f64,
    pub quotient_rho: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplusRow {
    pub m: usize,
    pub s: usize,
    pub rho_power: f64,
    pub rho_solved: f64,
    pub difference: f64,
    /// `|ρ² − (m − 1) − 2s/(ρ − 1)|` at the power-iteration `ρ`.
    pub residual: f64,
    /// `|x_{u₁} + x_{v₁} − 2s/(ρ − 1)|` from the trace, when the spine is found.
    pub spine_deviation: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalReport {
    pub tol: f64,
    pub prism: Vec<PrismRow>,
    pub splus: Vec<SplusRow>,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Allowed gap between power iteration and the closed-form root.
pub const SPLUS_AGREEMENT: f64 = 1e-8;

pub fn verify_extremal_families(
    k_max: usize,
    m_list: &[(usize, usize)],
    tol: f64,
) -> Result<ExtremalReport, VerifyError> {
    let mut failures = Vec::new();
    let mut prism = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let g = prism_blowup(k)?;
        let stats = booksize(&g);
        let cert = spectral_radius(&g, tol)?;
        let q = quotient_rho(&BlowupSpec::uniform(triangular_prism(), k)?, tol)?;
        let target = 3.0 * k as f64;
        let pass = g.m() == 9 * k * k
            && g.n() == 6 * k
            && stats.bk == k
            && (cert.estimate - target).abs() <= tol * target
            && cert.contains(target);
        if !pass {
            failures.push(format!(
                "prism blow-up k={k}: n={} m={} bk={} rho in [{}, {}]",
                g.n(),
                g.m(),
                stats.bk,
                fmt_real(cert.rho_lower),
                fmt_real(cert.rho_upper)
            ));
        }
        prism.push(PrismRow {
            k,
            n: g.n(),
            m: g.m(),
            bk: stats.bk,
            rho_lower: cert.rho_lower,
            rho_upper: cert.rho_upper,
            rho: cert.estimate,
            quotient_rho: q.estimate,
            pass,
        });
    }
    let mut splus = Vec::with_capacity(m_list.len());
    for &(m, s) in m_list {
        let g = match s_plus(m, s) {
            Ok(g) => g,
            Err(e) => {
                failures.push(format!("S+ m={m} s={s}: {e}"));
                continue;
            }
        };
        let cert = spectral_radius(&g, tol)?;
        let rho = cert.estimate;
        let solved = solve_splus_rho(m, s)?;
        let residual = (rho * rho - (m - 1) as f64 - 2.0 * s as f64 / (rho - 1.0)).abs();
        let spine_deviation = build_trace(&g, &cert, s.max(1), 2.0)
            .ok()
            .and_then(|t| t.splus_spine())
            .map(|sp| sp.spine_deviation());
        let difference = (rho - solved).abs();
        let pass = difference <= SPLUS_AGREEMENT && residual <= SPLUS_AGREEMENT;
        if !pass {
            failures.push(format!(
                "S+ m={m} s={s}: power {} vs solved {} (residual {})",
                fmt_real(rho),
                fmt_real(solved),
                fmt_real(residual)
            ));
        }
        splus.push(SplusRow {
            m,
            s,
            rho_power: rho,
            rho_solved: solved,
            difference,
            residual,
            spine_deviation,
            pass,
        });
    }
    Ok(ExtremalReport {
        tol,
        pass: failures.is_empty(),
        prism,
        splus,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, s_plus};

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_labeled(3, false, false).unwrap().count(), 8);
        assert_eq!(enumerate_labeled(3, true, false).unwrap().count(), 4);
        assert_eq!(enumerate_labeled(4, false, false).unwrap().count(), 64);
        assert!(matches!(
            enumerate_labeled(0, false, false),
            Err(VerifyError::OrderOutOfRange(0))
        ));
        assert!(matches!(
            enumerate_labeled(9, false, true),
            Err(VerifyError::OrderOutOfRange(9))
        ));
        assert!(matches!(
            enumerate_labeled(8, false, false),
            Err(VerifyError::OrderEightNotAcknowledged)
        ));
        assert!(enumerate_labeled(8, true, true).is_ok());
    }

    #[test]
    fn n7_total() {
        let it = enumerate_labeled(7, false, false).unwrap();
        assert_eq!(it.end, 1 << 21);
    }

    #[test]
    fn k33_record() {
        let rec = census_record(&complete_bipartite(3, 3).unwrap(), &CensusConfig::default());
        assert_eq!(rec.nosal, ThreeValued::Borderline);
        assert!(rec.complete_bipartite);
        assert!(rec.flags.iter().all(|f| f.outcome != Outcome::Violation));
    }

    #[test]
    fn splus_weak_candidate() {
        let cfg = CensusConfig { r: 2, tol: 1e-10 };
        let rec = census_record(&s_plus(13, 2).unwrap(), &cfg);
        assert_eq!(rec.s_plus, Some(2));
        assert!(matches!(
            rec.weak_condition,
            Some(ThreeValued::CertifiedYes | ThreeValued::Borderline)
        ));
        assert_eq!(
            rec.outcome(Predicate::WeakCandidate),
            Some(Outcome::Recorded)
        );
        assert_eq!(
            rec.outcome(Predicate::ThresholdTwoForty),
            Some(Outcome::Unmet)
        );
    }

    #[test]
    fn csv_row_shape() {
        let rec = census_record(
            &crate::graph::complete(3).unwrap(),
            &CensusConfig::default(),
        );
        let row = rec.to_csv_row();
        assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
        assert!(row.starts_with("Bw,3,3,true,false,false,false,false,1,1,"));
    }

    #[test]
    fn malformed_lines_are_skipped() {
        let input = "Bw\nnot graph6\n\nC~\n";
        let mut seen = Vec::new();
        let summary = run_census(
            CensusInput::Graph6(input.as_bytes()),
            &CensusConfig::default(),
            |r| {
                seen.push(r.graph6.clone());
                Ok(())
            },
        )
        .unwrap();
        assert_eq!(seen, vec!["Bw", "C~"]);
        assert_eq!(summary.malformed.len(), 1);
        assert_eq!(summary.malformed[0].line, 2);
    }

    #[test]
    fn extremal_small() {
        let report = verify_extremal_families(3, &[(17, 1), (37, 2)], 1e-10).unwrap();
        assert!(report.pass, "{:?}", report.failures);
    }
}
