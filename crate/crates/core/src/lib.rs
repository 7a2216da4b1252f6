//! Spectral and book-size toolkit for extremal questions on graphs whose
//! spectral radius is large relative to their edge count.
//!
//! Every spectral quantity is reported as a certified enclosure, and every
//! predicate that depends on one is three-valued.

pub mod booksize;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod report;
pub mod search;
pub mod spectral;
pub mod trace;
pub mod verify;

pub use booksize::{blowup_booksize, booksize, booksize_value, is_book_free, BookStats};
pub use graph::{
    blow_up, book, complete, complete_bipartite, cycle, prism_blowup, s_plus, triangular_prism,
    vertex_cap, Bipartition, BlowupSpec, Graph, GraphError,
};
pub use graph6::{parse_graph6, write_graph6, Graph6Error};
pub use search::{
    anneal_search, blowup_search, BlowupOptions, Condition, Direction, Schedule, SearchResult,
};
pub use spectral::{
    classify_nosal, classify_weak, nosal_classify, quotient_rho, solve_splus_rho, spectral_radius,
    weak_condition_classify, SpectralCertificate, SpectralError, ThreeValued, DEFAULT_TOL,
};
pub use trace::{build_trace, verify_claims, verify_identities, ClaimKind, ProofTrace, TraceError};
pub use verify::{
    census, census_record, run_census, verify_extremal_families, CensusConfig, CensusRecord,
    CensusSummary,
};
