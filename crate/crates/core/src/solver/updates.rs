//! Per-block update rules for the joint objective
//!
//! ```text
//!   Σ_v [ ‖X_v − X_v·Z_v − E_v‖²_F + λ1·‖E_v‖₁ + λ2·tr(Pᵀ·L_v·P) ]
//!     + λ3·‖F − P·Q‖²_F
//! ```
//!
//! over per-view self-representations `Z_v` (zero diagonal) and sparse
//! errors `E_v`, a shared continuous indicator `P` (orthonormal columns),
//! a rotation `Q` (orthogonal), and a discrete indicator `F` (one-hot
//! rows). Each update is the exact minimizer of the objective restricted
//! to its own block, except the `P` step which descends monotonically via
//! generalized power iteration.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::numerics::{soft_threshold, thin_svd};

/// Sample columns with squared norm below this cannot serve as regression
/// targets in the row update.
pub const SAMPLE_NORM_EPS: f64 = 1e-12;

const GPI_MAX_ITERS: usize = 1000;
const GPI_REL_TOL: f64 = 1e-10;

/// Pairwise squared distances between rows of the continuous indicator:
/// `Y_ij = ‖P_{i,:} − P_{j,:}‖²`. These weight the ℓ1 shrinkage of the
/// self-representation entries.
pub fn indicator_row_distances(p: &DMatrix<f64>) -> DMatrix<f64> {
    let n = p.nrows();
    let gram = p * p.transpose();
    let mut y = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let d = gram[(i, i)] + gram[(j, j)] - 2.0 * gram[(i, j)];
            y[(i, j)] = d.max(0.0);
        }
    }
    y
}

/// Replaces row `i` of the self-representation with the exact minimizer of
/// the objective restricted to that row.
///
/// `residual` must hold `X − X·Z − E` on entry and is updated in place to
/// stay consistent with the new row. The row subproblem separates per
/// entry: with `s = ‖X_i‖²` and `v_j` the least-squares coordinate target,
/// the minimizer is `soft(v_j, λ2·Y_ij / (4s))`, and the diagonal entry
/// stays exactly zero.
pub fn update_representation_row(
    x: &DMatrix<f64>,
    representation: &mut DMatrix<f64>,
    residual: &mut DMatrix<f64>,
    y: &DMatrix<f64>,
    lambda2: f64,
    i: usize,
    view_name: &str,
) -> Result<()> {
    let n = x.ncols();
    let xi = x.column(i);
    let s = xi.norm_squared();
    if s < SAMPLE_NORM_EPS {
        return Err(Error::DegenerateSample {
            view: view_name.to_string(),
            sample: i,
            norm_sq: s,
        });
    }

    // g = (X − XZ − E)ᵀ · X_i ; adding back row i's own contribution gives
    // the per-entry least-squares target v_j = g_j / s + Z_ij.
    let g = residual.tr_mul(&xi);
    let mut delta = DVector::<f64>::zeros(n);
    for j in 0..n {
        if j == i {
            continue; // Z_ii = 0 by constraint
        }
        let v = g[j] / s + representation[(i, j)];
        let threshold = lambda2 * y[(i, j)] / (4.0 * s);
        let new = soft_threshold(v, threshold);
        delta[j] = new - representation[(i, j)];
        representation[(i, j)] = new;
    }
    // rank-1 correction keeps residual = X − XZ − E
    residual.ger(-1.0, &xi, &delta, 1.0);
    Ok(())
}

/// Elementwise shrinkage for the sparse error term:
/// `E = soft(X − X·Z, λ1/2)`.
///
/// Recomputes the reconstruction residual from scratch (so incremental
/// rounding from the row updates cannot accumulate across sweeps) and
/// leaves `residual = X − X·Z − E` fresh on exit.
pub fn update_error(
    x: &DMatrix<f64>,
    representation: &DMatrix<f64>,
    error: &mut DMatrix<f64>,
    residual: &mut DMatrix<f64>,
    lambda1: f64,
) {
    let r = x - x * representation;
    let t = lambda1 / 2.0;
    *error = r.map(|a| soft_threshold(a, t));
    *residual = r - &*error;
}

/// Minimizes `λ2·tr(Pᵀ·L·P) − 2·λ3·tr(Pᵀ·F·Qᵀ)` over matrices with
/// orthonormal columns by generalized power iteration, warm-started at
/// `p_init`. Returns the new `P` and the inner objective trajectory
/// (which is nonincreasing; an increase beyond slack is an error).
pub fn update_continuous_traced(
    laplacian_sum: &DMatrix<f64>,
    discrete: &DMatrix<f64>,
    rotation: &DMatrix<f64>,
    lambda2: f64,
    lambda3: f64,
    p_init: &DMatrix<f64>,
) -> Result<(DMatrix<f64>, Vec<f64>)> {
    let n = p_init.nrows();
    let k = p_init.ncols();
    if laplacian_sum.nrows() != n || laplacian_sum.ncols() != n {
        return Err(Error::ShapeMismatch(format!(
            "Laplacian is {}x{}, expected {n}x{n}",
            laplacian_sum.nrows(),
            laplacian_sum.ncols()
        )));
    }
    if discrete.nrows() != n || discrete.ncols() != k || rotation.nrows() != k {
        return Err(Error::ShapeMismatch(
            "indicator/rotation shapes inconsistent with P".into(),
        ));
    }

    let a = laplacian_sum * lambda2;
    let b = discrete * rotation.transpose() * lambda3;

    // Gershgorin upper bound keeps γI − A positive definite.
    let gamma = 1.0
        + (0..n)
            .map(|i| a.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max);

    let obj = |p: &DMatrix<f64>| -> f64 {
        let lp = laplacian_sum * p;
        let smooth: f64 = lp.component_mul(p).sum();
        let align: f64 = b.component_mul(p).sum();
        lambda2 * smooth - 2.0 * align
    };

    let mut p = p_init.clone();
    let mut prev = obj(&p);
    let mut history = vec![prev];

    for _ in 0..GPI_MAX_ITERS {
        let m = (&p * (2.0 * gamma)) - (&a * &p) * 2.0 + &b * 2.0;
        let f = thin_svd(&m)?;
        p = &f.u * f.v.transpose();

        let cur = obj(&p);
        history.push(cur);
        if cur > prev + 1e-9 * prev.abs().max(1.0) {
            return Err(Error::NumericalFailure(format!(
                "power iteration diverged: objective rose from {prev:.6e} to {cur:.6e}"
            )));
        }
        let rel = (cur - prev).abs() / prev.abs().max(1e-12);
        prev = cur;
        if rel < GPI_REL_TOL {
            break;
        }
    }
    Ok((p, history))
}

/// [`update_continuous_traced`] without the trajectory.
pub fn update_continuous(
    laplacian_sum: &DMatrix<f64>,
    discrete: &DMatrix<f64>,
    rotation: &DMatrix<f64>,
    lambda2: f64,
    lambda3: f64,
    p_init: &DMatrix<f64>,
) -> Result<DMatrix<f64>> {
    update_continuous_traced(laplacian_sum, discrete, rotation, lambda2, lambda3, p_init)
        .map(|(p, _)| p)
}

/// Orthogonal Procrustes step: the rotation minimizing `‖F − P·Q‖²_F`
/// over orthogonal matrices is `Q = U·Vᵀ` with `Pᵀ·F = U·Σ·Vᵀ`.
pub fn update_rotation(
    discrete: &DMatrix<f64>,
    continuous: &DMatrix<f64>,
) -> Result<DMatrix<f64>> {
    if discrete.shape() != continuous.shape() {
        return Err(Error::ShapeMismatch(format!(
            "indicator is {:?} but P is {:?}",
            discrete.shape(),
            continuous.shape()
        )));
    }
    let c = continuous.tr_mul(discrete);
    let f = thin_svd(&c)?;
    Ok(&f.u * f.v.transpose())
}

/// Discrete indicator step: each row of `F` puts its single 1 at the
/// argmax of the corresponding row of `P·Q`; ties resolve to the lowest
/// column index. This maximizes `tr(Fᵀ·P·Q)` over one-hot-row matrices.
pub fn update_discrete(product: &DMatrix<f64>) -> DMatrix<f64> {
    let (n, k) = product.shape();
    let mut f = DMatrix::zeros(n, k);
    for i in 0..n {
        let mut best = 0usize;
        let mut best_val = product[(i, 0)];
        for j in 1..k {
            if product[(i, j)] > best_val {
                best_val = product[(i, j)];
                best = j;
            }
        }
        f[(i, best)] = 1.0;
    }
    f
}
