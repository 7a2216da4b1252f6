//! Certified spectral-radius enclosures.
//!
//! Power iteration on `A + I` from the all-ones vector, with Collatz–Wielandt
//! bounds `min_v (Ax)_v / x_v ≤ ρ ≤ max_v (Ax)_v / x_v` evaluated on every
//! iterate. The bounds hold for any positive `x`, so an enclosure is valid
//! whether or not the iteration converged.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{BitIter, BlowupSpec, Graph};

pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("graph has no vertices")]
    Empty,
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("blow-up base graph is disconnected")]
    DisconnectedBase,
    #[error("spectral enclosure [{lower}, {upper}] does not lie strictly above 1")]
    EnclosureTouchesOne { lower: f64, upper: f64 },
    #[error("need m >= 3 and s >= 1 (got m = {m}, s = {s})")]
    SplusParameters { m: usize, s: usize },
    #[error("no root of the S+ cubic in [sqrt(m-1), sqrt(m-1) + 2] for m = {m}, s = {s}")]
    NoRootInBracket { m: usize, s: usize },
}

/// Enclosure of the spectral radius together with the Perron vector it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralCertificate {
    pub rho_lower: f64,
    pub rho_upper: f64,
    pub estimate: f64,
    /// Normalized to maximum coordinate 1.
    pub perron: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl SpectralCertificate {
    pub fn width(&self) -> f64 {
        self.rho_upper - self.rho_lower
    }

    pub fn contains(&self, value: f64) -> bool {
        self.rho_lower <= value && value <= self.rho_upper
    }

    fn zero(n: usize) -> Self {
        SpectralCertificate {
            rho_lower: 0.0,
            rho_upper: 0.0,
            estimate: 0.0,
            perron: vec![1.0; n],
            iterations: 0,
            converged: true,
        }
    }
}

/// Result of comparing a certified enclosure against a threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThreeValued {
    CertifiedYes,
    CertifiedNo,
    Borderline,
}

impl ThreeValued {
    pub fn as_str(self) -> &'static str {
        match self {
            ThreeValued::CertifiedYes => "certified-yes",
            ThreeValued::CertifiedNo => "certified-no",
            ThreeValued::Borderline => "borderline",
        }
    }
}

impl std::fmt::Display for ThreeValued {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[inline]
fn ulp(x: f64) -> f64 {
    x.next_up() - x
}

pub fn iteration_cap(n: usize) -> usize {
    100 * n + 10_000
}

/// Shared power-iteration engine.
///
/// `apply(x, y)` writes `y = Mx` for a nonnegative irreducible `M`; `terms[v]`
/// is the number of summands in `(Mx)_v`, used to size the rounding slack.
/// `weights` defines the inner product for the estimate.
fn certify<F>(
    start: Vec<f64>,
    terms: &[usize],
    weights: Option<&[f64]>,
    tol: f64,
    mut apply: F,
) -> SpectralCertificate
where
    F: FnMut(&[f64], &mut [f64]),
{
    let n = start.len();
    let cap = iteration_cap(n);
    let mut x = start;
    let mut y = vec![0.0; n];
    let mut iterations = 0;
    loop {
        apply(&x, &mut y);
        iterations += 1;
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        let mut num = 0.0;
        let mut den = 0.0;
        for v in 0..n {
            let q = y[v] / x[v];
            // rounding of an s-term positive sum is at most (s - 1) ulps of
            // the quotient, the division adds half an ulp
            let slack = (8 + 2 * terms[v]) as f64 * ulp(q);
            lo = lo.min(q - slack);
            hi = hi.max(q + slack);
            let w = weights.map_or(1.0, |w| w[v]);
            num += w * x[v] * y[v];
            den += w * x[v] * x[v];
        }
        let lo = lo.max(0.0);
        let converged = hi - lo <= tol * hi;
        if converged || iterations >= cap {
            let estimate = (num / den).clamp(lo, hi);
            return SpectralCertificate {
                rho_lower: lo,
                rho_upper: hi,
                estimate,
                perron: x,
                iterations,
                converged,
            };
        }
        let mut top = 0.0f64;
        for v in 0..n {
            y[v] += x[v];
            top = top.max(y[v]);
        }
        for v in 0..n {
            x[v] = y[v] / top;
        }
    }
}

fn certify_connected(g: &Graph, start: Vec<f64>, tol: f64) -> SpectralCertificate {
    let n = g.n();
    if g.m() == 0 {
        return SpectralCertificate::zero(n);
    }
    let degrees = g.degrees();
    certify(start, &degrees, None, tol, |x, y| {
        for (v, yv) in y.iter_mut().enumerate() {
            *yv = g.neighbors(v).map(|u| x[u]).sum();
        }
    })
}

fn check_tol(tol: f64) -> Result<(), SpectralError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(SpectralError::BadTolerance(tol))
    }
}

/// Certified spectral radius of `g`.
///
/// For a disconnected graph each component is certified separately and the
/// component with the largest upper bound is returned, its Perron vector
/// embedded with zeros elsewhere.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralCertificate, SpectralError> {
    check_tol(tol)?;
    if g.n() == 0 {
        return Err(SpectralError::Empty);
    }
    if g.m() == 0 {
        return Ok(SpectralCertificate::zero(g.n()));
    }
    if g.is_connected() {
        return Ok(certify_connected(g, vec![1.0; g.n()], tol));
    }
    let mut best: Option<(Vec<usize>, SpectralCertificate)> = None;
    for comp in g.components() {
        let sub = g.induced(&comp);
        let cert = certify_connected(&sub, vec![1.0; sub.n()], tol);
        if best
            .as_ref()
            .is_none_or(|(_, b)| cert.rho_upper > b.rho_upper)
        {
            best = Some((comp, cert));
        }
    }
    let (comp, cert) = best.expect("nonempty graph has a component");
    let mut perron = vec![0.0; g.n()];
    for (i, &v) in comp.iter().enumerate() {
        perron[v] = cert.perron[i];
    }
    Ok(SpectralCertificate { perron, ..cert })
}

/// Certificate for a connected graph, iterating from `start` instead of the
/// all-ones vector. Bounds stay valid for any positive start.
pub(crate) fn spectral_radius_warm(g: &Graph, start: &[f64], tol: f64) -> SpectralCertificate {
    debug_assert_eq!(start.len(), g.n());
    let start = if start.iter().all(|&v| v > 0.0 && v.is_finite()) {
        start.to_vec()
    } else {
        vec![1.0; g.n()]
    };
    certify_connected(g, start, tol)
}

/// Spectral radius of a blow-up from the base-sized system `M_ij = k_j [ij ∈ E(H)]`.
pub fn quotient_rho(spec: &BlowupSpec, tol: f64) -> Result<SpectralCertificate, SpectralError> {
    check_tol(tol)?;
    let h = spec.base();
    if h.n() == 0 {
        return Err(SpectralError::Empty);
    }
    if !h.is_connected() {
        return Err(SpectralError::DisconnectedBase);
    }
    if h.m() == 0 {
        return Ok(SpectralCertificate::zero(h.n()));
    }
    let k: Vec<f64> = spec.weights().iter().map(|&w| w as f64).collect();
    let terms = h.degrees();
    let cert = certify(vec![1.0; h.n()], &terms, Some(&k), tol, |x, y| {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = BitIter::new(h.row(i)).map(|j| k[j] * x[j]).sum();
        }
    });
    Ok(cert)
}

/// The root `ρ₀ > 1` of `ρ² = m − 1 + 2s/(ρ − 1)`, by bisection.
pub fn solve_splus_rho(m: usize, s: usize) -> Result<f64, SpectralError> {
    if m < 3 || s == 0 {
        return Err(SpectralError::SplusParameters { m, s });
    }
    let target = (m - 1) as f64;
    let two_s = 2.0 * s as f64;
    // strictly increasing for rho > 1
    let g = |rho: f64| rho * rho - two_s / (rho - 1.0) - target;
    let mut lo = target.sqrt();
    let mut hi = lo + 2.0;
    if g(lo) > 0.0 || g(hi) < 0.0 {
        return Err(SpectralError::NoRootInBracket { m, s });
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Rounding allowance when comparing an enclosure endpoint against `√m`.
fn sqrt_bounds(m: usize) -> (f64, f64) {
    let r = (m as f64).sqrt();
    (r.next_down(), r.next_up())
}

/// Nosal test `ρ > √m` against a certificate.
pub fn classify_nosal(cert: &SpectralCertificate, m: usize) -> ThreeValued {
    if m == 0 {
        // rho = 0 exactly
        return ThreeValued::CertifiedNo;
    }
    let (below, above) = sqrt_bounds(m);
    if cert.rho_lower > above {
        ThreeValued::CertifiedYes
    } else if cert.rho_upper < below {
        ThreeValued::CertifiedNo
    } else {
        ThreeValued::Borderline
    }
}

pub fn nosal_classify(g: &Graph, tol: f64) -> Result<ThreeValued, SpectralError> {
    if g.m() == 0 {
        return Ok(ThreeValued::CertifiedNo);
    }
    Ok(classify_nosal(&spectral_radius(g, tol)?, g.m()))
}

/// `h(ρ) = ρ² − 2/(ρ − 1)`.
pub fn weak_lhs(rho: f64) -> f64 {
    rho * rho - 2.0 / (rho - 1.0)
}

fn weak_margin(m: usize) -> f64 {
    8.0 * f64::EPSILON * (m as f64 + 1.0)
}

/// Test of `ρ² ≥ m − 1 + 2/(ρ − 1)` against a certificate.
pub fn classify_weak(cert: &SpectralCertificate, m: usize) -> Result<ThreeValued, SpectralError> {
    if cert.rho_lower <= 1.0 {
        return Err(SpectralError::EnclosureTouchesOne {
            lower: cert.rho_lower,
            upper: cert.rho_upper,
        });
    }
    let target = m as f64 - 1.0;
    let eps = weak_margin(m);
    Ok(if weak_lhs(cert.rho_lower) >= target + eps {
        ThreeValued::CertifiedYes
    } else if weak_lhs(cert.rho_upper) < target - eps {
        ThreeValued::CertifiedNo
    } else {
        ThreeValued::Borderline
    })
}

pub fn weak_condition_classify(g: &Graph, tol: f64) -> Result<ThreeValued, SpectralError> {
    classify_weak(&spectral_radius(g, tol)?, g.m())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        complete, complete_bipartite, cycle, prism_blowup, s_plus, triangular_prism,
    };

    #[test]
    fn complete_bipartite_rho() {
        let c = spectral_radius(&complete_bipartite(3, 4).unwrap(), 1e-10).unwrap();
        assert!(c.converged);
        assert!(c.contains(12f64.sqrt()), "{c:?}");
        assert!(c.width() <= 1e-9);
    }

    #[test]
    fn regular_graphs_are_exact() {
        let c = spectral_radius(&prism_blowup(2).unwrap(), 1e-10).unwrap();
        assert!(c.contains(6.0));
        let c = spectral_radius(&complete(2).unwrap(), 1e-10).unwrap();
        assert!(c.contains(1.0));
        assert_eq!(c.iterations, 1);
        let c = spectral_radius(&triangular_prism(), 1e-10).unwrap();
        assert!(c.contains(3.0));
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(
            spectral_radius(&Graph::empty(0).unwrap(), 1e-10),
            Err(SpectralError::Empty)
        );
        let c = spectral_radius(&Graph::empty(3).unwrap(), 1e-10).unwrap();
        assert_eq!((c.rho_lower, c.rho_upper), (0.0, 0.0));
        assert!(spectral_radius(&complete(3).unwrap(), 0.0).is_err());
    }

    #[test]
    fn disconnected_takes_largest_component() {
        // K3 on {0,1,2} plus an edge {3,4}
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let c = spectral_radius(&g, 1e-10).unwrap();
        assert!(c.contains(2.0));
        assert_eq!(&c.perron[3..], &[0.0, 0.0]);
    }

    #[test]
    fn quotient_matches() {
        let c = quotient_rho(&BlowupSpec::uniform(triangular_prism(), 5).unwrap(), 1e-10).unwrap();
        assert!(c.contains(15.0));
        let c = quotient_rho(
            &BlowupSpec::new(complete(2).unwrap(), vec![3, 7]).unwrap(),
            1e-10,
        )
        .unwrap();
        assert!(c.contains(21f64.sqrt()), "{c:?}");
        let disconnected = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            quotient_rho(&BlowupSpec::uniform(disconnected, 1).unwrap(), 1e-10),
            Err(SpectralError::DisconnectedBase)
        );
    }

    #[test]
    fn splus_root() {
        let rho = solve_splus_rho(1001, 3).unwrap();
        assert!((rho * rho - 1000.0 - 6.0 / (rho - 1.0)).abs() < 1e-10);
        let a = solve_splus_rho(101, 1).unwrap();
        let b = solve_splus_rho(101, 2).unwrap();
        let c = solve_splus_rho(101, 4).unwrap();
        assert!(a < b && b < c);
        let direct = spectral_radius(&s_plus(5, 1).unwrap(), 1e-12).unwrap();
        assert!((solve_splus_rho(5, 1).unwrap() - direct.estimate).abs() < 1e-8);
        assert!(solve_splus_rho(2, 1).is_err());
        assert!(solve_splus_rho(10, 0).is_err());
        assert_eq!(
            solve_splus_rho(5, 1000),
            Err(SpectralError::NoRootInBracket { m: 5, s: 1000 })
        );
    }

    #[test]
    fn nosal_examples() {
        assert_eq!(
            nosal_classify(&complete(3).unwrap(), 1e-10).unwrap(),
            ThreeValued::CertifiedYes
        );
        assert_eq!(
            nosal_classify(&cycle(5).unwrap(), 1e-10).unwrap(),
            ThreeValued::CertifiedNo
        );
        assert_eq!(
            nosal_classify(&complete_bipartite(3, 4).unwrap(), 1e-10).unwrap(),
            ThreeValued::Borderline
        );
    }

    #[test]
    fn weak_examples() {
        let w = weak_condition_classify(&s_plus(41, 1).unwrap(), 1e-10).unwrap();
        assert_ne!(w, ThreeValued::CertifiedNo);
        for k in 2..=5 {
            let w = weak_condition_classify(&prism_blowup(k).unwrap(), 1e-10).unwrap();
            assert_eq!(w, ThreeValued::CertifiedYes, "k = {k}");
        }
        // k = 1 meets the condition with equality
        let w = weak_condition_classify(&prism_blowup(1).unwrap(), 1e-10).unwrap();
        assert_ne!(w, ThreeValued::CertifiedNo);
        assert_eq!(
            weak_condition_classify(&cycle(5).unwrap(), 1e-10).unwrap(),
            ThreeValued::CertifiedNo
        );
        assert!(matches!(
            weak_condition_classify(&complete(2).unwrap(), 1e-10),
            Err(SpectralError::EnclosureTouchesOne { .. })
        ));
    }
}
