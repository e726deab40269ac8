//! End-to-end convenience: fit, fuse the per-view affinities, and run the
//! final spectral clustering, plus the repeated-trials protocol.

use crate::dataset::MultiViewDataset;
use crate::error::Result;
use crate::parallel;
use crate::solver::{fit, fuse_affinity, FitOutcome, Hyperparams};
use crate::spectral::{spectral_cluster, Affinity};

/// Output of a single end-to-end run.
#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub labels: Vec<usize>,
    pub affinity: Affinity,
    pub fit: FitOutcome,
}

/// Runs the full method on a dataset: alternating minimization, affinity
/// fusion `W = Σ_v (|Z_v|+|Z_v|ᵀ)/2`, then spectral clustering into `k`
/// groups. The solver and the final k-means share the hyperparameter seed.
pub fn run(ds: &MultiViewDataset, k: usize, h: &Hyperparams) -> Result<PipelineOutcome> {
    let outcome = fit(ds, k, h)?;
    let affinity = Affinity::new(fuse_affinity(&outcome.state.views))?;
    let labels = spectral_cluster(&affinity, k, h.seed)?;
    Ok(PipelineOutcome {
        labels,
        affinity,
        fit: outcome,
    })
}

/// One repetition of the random-experiment protocol.
#[derive(Debug)]
pub struct TrialRun {
    pub trial: usize,
    /// Seed actually used: base seed plus trial index.
    pub seed: u64,
    pub result: Result<PipelineOutcome>,
}

/// Runs `trials` independent repetitions, re-seeding initialization and
/// the final k-means per trial (`seed = h.seed + trial`), the dataset held
/// fixed. Trials execute in parallel under the `parallel` feature; results
/// come back in trial order either way. Individual failures are recorded,
/// not propagated, so remaining trials still run.
pub fn run_trials(
    ds: &MultiViewDataset,
    k: usize,
    h: &Hyperparams,
    trials: usize,
) -> Vec<TrialRun> {
    parallel::map_indexed(trials, |t| {
        let seed = h.seed.wrapping_add(t as u64);
        let ht = h.clone().with_seed(seed);
        TrialRun {
            trial: t,
            seed,
            result: run(ds, k, &ht),
        }
    })
}
