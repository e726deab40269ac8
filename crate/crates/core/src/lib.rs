//! Joint multi-view subspace clustering.
//!
//! Given several feature matrices over the same samples (one per view),
//! this crate learns per-view self-representations, a shared continuous
//! cluster indicator on the Stiefel manifold, an orthogonal rotation, and
//! a discrete one-hot indicator in a single alternating minimization.
//! The learned representations are fused into an affinity matrix, which a
//! spectral clustering step turns into final labels; six standard measures
//! evaluate them against ground truth.
//!
//! Modules:
//! - [`numerics`]: deterministic eigen/SVD wrappers, seeded k-means, exact
//!   assignment.
//! - [`dataset`]: manifest + CSV loading, validation, synthetic
//!   union-of-subspaces generation.
//! - [`solver`]: the alternating-minimization engine and affinity fusion.
//! - [`spectral`]: normalized-Laplacian embedding + k-means.
//! - [`metrics`]: NMI / ACC / ARI / pairwise P-R-F and mean±std
//!   aggregation.
//! - [`pipeline`]: fit → fuse → cluster in one call.
//!
//! The `parallel` feature (on by default) runs per-view updates, k-means
//! restarts, and experiment trials on rayon; without it everything is
//! sequential with identical results.

pub mod dataset;
pub mod error;
pub mod metrics;
pub mod numerics;
mod parallel;
pub mod pipeline;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};

/// Runs `f` on a rayon pool with the given number of threads when the
/// `parallel` feature is enabled; otherwise runs it directly. Benchmarks
/// use this to compare parallel against single-threaded execution.
#[cfg(feature = "parallel")]
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("rayon pool")
        .install(f)
}

#[cfg(not(feature = "parallel"))]
pub fn with_threads<T: Send>(_threads: usize, f: impl FnOnce() -> T + Send) -> T {
    f()
}
