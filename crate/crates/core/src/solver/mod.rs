//! Alternating-minimization engine: per-view self-representation and error
//! updates, shared continuous/rotation/discrete indicator updates,
//! objective tracking, stopping, and affinity fusion.

mod updates;

pub use updates::{
    indicator_row_distances, update_continuous, update_continuous_traced, update_discrete,
    update_error, update_representation_row, update_rotation, SAMPLE_NORM_EPS,
};

use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::{normalize_columns, MultiViewDataset, Normalize};
use crate::error::{Error, Result};
use crate::parallel;

/// Weights and stopping controls for [`fit`].
#[derive(Debug, Clone)]
pub struct Hyperparams {
    /// Sparsity weight on the error term.
    pub lambda1: f64,
    /// Spectral-embedding (graph smoothness) weight.
    pub lambda2: f64,
    /// Discrete–continuous coupling weight.
    pub lambda3: f64,
    pub max_iters: usize,
    /// Relative objective change below which the sweep loop stops.
    pub rel_tol: f64,
    /// Seed for the random orthonormal initialization.
    pub seed: u64,
}

impl Hyperparams {
    pub fn new(lambda1: f64, lambda2: f64, lambda3: f64) -> Self {
        Hyperparams {
            lambda1,
            lambda2,
            lambda3,
            max_iters: 100,
            rel_tol: 1e-6,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<()> {
        // λ = 0 is allowed so the no-joint-learning ablation can run
        for (name, v) in [
            ("lambda1", self.lambda1),
            ("lambda2", self.lambda2),
            ("lambda3", self.lambda3),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be finite and >= 0, got {v}"
                )));
            }
        }
        if !self.rel_tol.is_finite() || self.rel_tol <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "rel_tol must be finite and > 0, got {}",
                self.rel_tol
            )));
        }
        Ok(())
    }
}

/// Per-view solver variables.
#[derive(Debug, Clone)]
pub struct ViewState {
    /// Self-representation `Z`, N×N with exactly zero diagonal.
    pub representation: DMatrix<f64>,
    /// Sparse error `E`, d×N.
    pub error: DMatrix<f64>,
    /// Symmetric nonnegative affinity `(|Z| + |Z|ᵀ)/2`.
    pub affinity: DMatrix<f64>,
    /// Unnormalized graph Laplacian `D − W`.
    pub laplacian: DMatrix<f64>,
}

/// Variables shared across views.
#[derive(Debug, Clone)]
pub struct SharedState {
    /// Continuous indicator `P`, N×K with orthonormal columns.
    pub continuous: DMatrix<f64>,
    /// Rotation `Q`, K×K orthogonal.
    pub rotation: DMatrix<f64>,
    /// Discrete indicator `F`, N×K with one-hot rows.
    pub discrete: DMatrix<f64>,
}

/// Everything the solver learned.
#[derive(Debug, Clone)]
pub struct SolverState {
    pub views: Vec<ViewState>,
    pub shared: SharedState,
}

/// Value of each objective term; the total is their exact sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveTerms {
    /// `Σ_v ‖X_v − X_v·Z_v − E_v‖²_F`
    pub reconstruction: f64,
    /// `λ1 · Σ_v ‖E_v‖₁`
    pub sparsity: f64,
    /// `λ2 · Σ_v tr(Pᵀ·L_v·P)`
    pub spectral: f64,
    /// `λ3 · ‖F − P·Q‖²_F`
    pub coupling: f64,
}

impl ObjectiveTerms {
    pub fn total(&self) -> f64 {
        self.reconstruction + self.sparsity + self.spectral + self.coupling
    }
}

/// Objective trajectory of a [`fit`] run.
#[derive(Debug, Clone)]
pub struct SolverTrace {
    /// Total objective after each sweep; entry 0 is the initialization.
    pub objectives: Vec<f64>,
    /// Term breakdown matching `objectives` entry for entry.
    pub terms: Vec<ObjectiveTerms>,
    /// Wall-clock seconds per sweep (entry 0 covers initialization).
    pub seconds: Vec<f64>,
    /// Whether the relative-change criterion was met within `max_iters`.
    pub converged: bool,
    /// Number of full sweeps performed.
    pub iterations: usize,
}

impl SolverTrace {
    /// Deterministic CSV dump: `iter,total,recon,l1,spectral,coupling`.
    /// Wall times are intentionally excluded so identical runs produce
    /// identical files.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("iter,total,recon,l1,spectral,coupling\n");
        for (i, t) in self.terms.iter().enumerate() {
            out.push_str(&format!(
                "{},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}\n",
                i,
                t.total(),
                t.reconstruction,
                t.sparsity,
                t.spectral,
                t.coupling
            ));
        }
        out
    }
}

/// Result of [`fit`]: final state plus the objective trace.
#[derive(Debug, Clone)]
pub struct FitOutcome {
    pub state: SolverState,
    pub trace: SolverTrace,
}

/// Borrowed view of the solver state handed to the sweep hook.
pub struct SweepSnapshot<'a> {
    /// 0 for the initialization, then 1, 2, … per completed sweep.
    pub iteration: usize,
    pub views: Vec<&'a ViewState>,
    pub shared: &'a SharedState,
    pub objective: f64,
}

/// Evaluates the four-term objective for explicit state.
///
/// `data` holds the (already normalized) per-view sample matrices in the
/// same order as `views`.
pub fn objective(
    data: &[DMatrix<f64>],
    views: &[ViewState],
    shared: &SharedState,
    h: &Hyperparams,
) -> Result<(f64, ObjectiveTerms)> {
    if data.len() != views.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} data matrices for {} view states",
            data.len(),
            views.len()
        )));
    }
    let n = shared.continuous.nrows();
    let k = shared.continuous.ncols();
    if shared.rotation.shape() != (k, k) || shared.discrete.shape() != (n, k) {
        return Err(Error::ShapeMismatch(
            "shared state shapes inconsistent".into(),
        ));
    }

    let mut reconstruction = 0.0;
    let mut l1 = 0.0;
    let mut smooth = 0.0;
    for (x, view) in data.iter().zip(views) {
        let (d, nx) = x.shape();
        if nx != n
            || view.representation.shape() != (n, n)
            || view.error.shape() != (d, n)
            || view.laplacian.shape() != (n, n)
        {
            return Err(Error::ShapeMismatch(
                "view state shapes inconsistent with data".into(),
            ));
        }
        let r = x - x * &view.representation - &view.error;
        reconstruction += r.norm_squared();
        l1 += view.error.iter().map(|e| e.abs()).sum::<f64>();
        let lp = &view.laplacian * &shared.continuous;
        smooth += lp.component_mul(&shared.continuous).sum();
    }
    let gap = &shared.discrete - &shared.continuous * &shared.rotation;
    let terms = ObjectiveTerms {
        reconstruction,
        sparsity: h.lambda1 * l1,
        spectral: h.lambda2 * smooth,
        coupling: h.lambda3 * gap.norm_squared(),
    };
    Ok((terms.total(), terms))
}

/// Fused affinity across views: `W = Σ_v (|Z_v| + |Z_v|ᵀ)/2`.
pub fn fuse_affinity(views: &[ViewState]) -> DMatrix<f64> {
    let n = views[0].representation.nrows();
    let mut w = DMatrix::zeros(n, n);
    for view in views {
        w += &view.affinity;
    }
    w
}

pub(crate) fn graph_from_representation(z: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>) {
    let az = z.map(f64::abs);
    let w = (&az + az.transpose()) * 0.5;
    let n = w.nrows();
    let deg = DVector::from_iterator(n, (0..n).map(|i| w.row(i).sum()));
    let l = DMatrix::from_diagonal(&deg) - &w;
    (w, l)
}

struct ViewBlock {
    name: String,
    data: DMatrix<f64>,
    state: ViewState,
    /// Cache of `X − X·Z − E`, kept consistent by the update rules.
    residual: DMatrix<f64>,
}

fn random_orthonormal(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let g = DMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0));
    g.qr().q()
}

/// Runs the alternating minimization (all `Z_v` rows, all `E_v`, then `P`,
/// `Q`, `F` per sweep) until the relative objective change drops below
/// `h.rel_tol` or `h.max_iters` sweeps elapse. Non-convergence is reported
/// in the trace, not as an error.
pub fn fit(ds: &MultiViewDataset, k: usize, h: &Hyperparams) -> Result<FitOutcome> {
    fit_with_hook(ds, k, h, |_| {})
}

/// [`fit`] with a hook invoked after initialization and after every sweep;
/// tests use it to check constraint invariants at each step.
pub fn fit_with_hook(
    ds: &MultiViewDataset,
    k: usize,
    h: &Hyperparams,
    mut hook: impl FnMut(&SweepSnapshot),
) -> Result<FitOutcome> {
    h.validate()?;
    let n = ds.n_samples();
    if k < 2 || k > n {
        return Err(Error::InvalidConfig(format!(
            "cluster count must satisfy 2 <= k <= N, got k={k}, N={n}"
        )));
    }

    // normalization bounds the row-update denominators away from zero
    let mut blocks = Vec::with_capacity(ds.n_views());
    for (name, x) in ds.names().iter().zip(ds.views()) {
        let data = match ds.normalize() {
            Normalize::L2Columns => {
                let (normed, zero_cols) = normalize_columns(x);
                if let Some(&j) = zero_cols.first() {
                    return Err(Error::InvalidConfig(format!(
                        "view '{name}' has an all-zero sample (column {j})"
                    )));
                }
                normed
            }
            Normalize::None => {
                if let Some(j) = (0..x.ncols()).find(|&j| x.column(j).norm() == 0.0) {
                    return Err(Error::InvalidConfig(format!(
                        "view '{name}' has an all-zero sample (column {j})"
                    )));
                }
                x.clone()
            }
        };
        let d = data.nrows();
        blocks.push(ViewBlock {
            name: name.clone(),
            residual: data.clone(),
            state: ViewState {
                representation: DMatrix::zeros(n, n),
                error: DMatrix::zeros(d, n),
                affinity: DMatrix::zeros(n, n),
                laplacian: DMatrix::zeros(n, n),
            },
            data,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(h.seed);
    let continuous = random_orthonormal(n, k, &mut rng);
    let rotation = random_orthonormal(k, k, &mut rng);
    // F = 0 would violate the one-hot constraint, so the discrete indicator
    // is produced from the initial P, Q right away
    let discrete = update_discrete(&(&continuous * &rotation));
    let mut shared = SharedState {
        continuous,
        rotation,
        discrete,
    };

    let started = Instant::now();
    let eval = |blocks: &[ViewBlock], shared: &SharedState| -> Result<(f64, ObjectiveTerms)> {
        let data: Vec<DMatrix<f64>> = blocks.iter().map(|b| b.data.clone()).collect();
        let views: Vec<ViewState> = blocks.iter().map(|b| b.state.clone()).collect();
        objective(&data, &views, shared, h)
    };

    let (obj0, terms0) = eval(&blocks, &shared)?;
    let mut trace = SolverTrace {
        objectives: vec![obj0],
        terms: vec![terms0],
        seconds: vec![started.elapsed().as_secs_f64()],
        converged: false,
        iterations: 0,
    };
    hook(&SweepSnapshot {
        iteration: 0,
        views: blocks.iter().map(|b| &b.state).collect(),
        shared: &shared,
        objective: obj0,
    });

    let mut prev_obj = obj0;
    for sweep in 1..=h.max_iters {
        let tick = Instant::now();
        let y = indicator_row_distances(&shared.continuous);
        let lambda1 = h.lambda1;
        let lambda2 = h.lambda2;

        parallel::try_for_each_mut(&mut blocks, |b| {
            for i in 0..n {
                update_representation_row(
                    &b.data,
                    &mut b.state.representation,
                    &mut b.residual,
                    &y,
                    lambda2,
                    i,
                    &b.name,
                )?;
            }
            update_error(
                &b.data,
                &b.state.representation,
                &mut b.state.error,
                &mut b.residual,
                lambda1,
            );
            let (w, l) = graph_from_representation(&b.state.representation);
            b.state.affinity = w;
            b.state.laplacian = l;
            Ok(())
        })?;

        let mut laplacian_sum = DMatrix::zeros(n, n);
        for b in &blocks {
            laplacian_sum += &b.state.laplacian;
        }
        shared.continuous = update_continuous(
            &laplacian_sum,
            &shared.discrete,
            &shared.rotation,
            h.lambda2,
            h.lambda3,
            &shared.continuous,
        )?;
        shared.rotation = update_rotation(&shared.discrete, &shared.continuous)?;
        shared.discrete = update_discrete(&(&shared.continuous * &shared.rotation));

        let (obj, terms) = eval(&blocks, &shared)?;
        trace.objectives.push(obj);
        trace.terms.push(terms);
        trace.seconds.push(tick.elapsed().as_secs_f64());
        trace.iterations = sweep;
        hook(&SweepSnapshot {
            iteration: sweep,
            views: blocks.iter().map(|b| &b.state).collect(),
            shared: &shared,
            objective: obj,
        });

        let rel = (obj - prev_obj).abs() / prev_obj.max(1e-12);
        prev_obj = obj;
        if rel < h.rel_tol {
            trace.converged = true;
            break;
        }
    }

    let views = blocks.into_iter().map(|b| b.state).collect();
    Ok(FitOutcome {
        state: SolverState { views, shared },
        trace,
    })
}
