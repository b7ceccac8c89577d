//! Library for finding long paths that live in a subgraph G' and are induced
//! in its host graph G, together with the machinery around that search:
//! spectral and edge-distribution certificates, exact brute-force oracles,
//! seeded instance generators, an edge-colouring pipeline, and a linear-work
//! instrumentation counter.
//!
//! Graph structure and the search are integer-exact. The numeric subsystem
//! (eigenvalues and certificate arithmetic) is generic over [`scalar::Real`]
//! (`f32` or `f64`); the aliases below fix the common `f64` instantiations.

pub mod certify;
pub mod dfs;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod ramsey;
pub mod scalar;
pub mod spectral;

pub use certify::{certify_spectral, certify_upper_uniformity, Certificate};
pub use dfs::{
    run, run_traced, run_with_invariant_checks, verify_induced_path, AlgParams, RunReport,
    RunResult,
};
pub use graph::{Graph, GraphPair, VertexSet};
pub use oracle::{
    check_conditions_exact, check_conditions_sampled, longest_induced_path_exact, ConditionReport,
};
pub use ramsey::{run_ramsey_pipeline, ColorStrategy, RamseyParams};
pub use scalar::Real;
pub use spectral::{alon_boppana_check, compute_lambda, mixing_check, SpectralReport};

/// Default-precision certificate.
pub type CertificateF64 = certify::Certificate<f64>;
/// Single-precision certificate.
pub type CertificateF32 = certify::Certificate<f32>;
/// Default-precision spectral statistics.
pub type SpectralReportF64 = spectral::SpectralReport<f64>;
/// Single-precision spectral statistics.
pub type SpectralReportF32 = spectral::SpectralReport<f32>;
