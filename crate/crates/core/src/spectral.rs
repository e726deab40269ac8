//! Final clustering from a fused affinity: symmetric-normalized Laplacian
//! embedding followed by k-means on the row-normalized eigenvectors.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::numerics::{kmeans, sym_eig};

/// A validated symmetric nonnegative affinity with zero diagonal.
#[derive(Debug, Clone)]
pub struct Affinity {
    w: DMatrix<f64>,
}

impl Affinity {
    /// Checks symmetry (within `1e-10` relative), nonnegativity, and a zero
    /// diagonal, then canonicalizes: exact symmetrization, tiny negatives
    /// clamped to zero, diagonal zeroed.
    pub fn new(w: DMatrix<f64>) -> Result<Self> {
        let n = w.nrows();
        if n != w.ncols() {
            return Err(Error::InvalidInput(format!(
                "affinity must be square, got {}x{}",
                n,
                w.ncols()
            )));
        }
        if !w.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidInput("affinity has non-finite entries".into()));
        }
        let scale = w.norm().max(1.0);
        if (&w - w.transpose()).norm() > 1e-10 * scale {
            return Err(Error::InvalidInput("affinity is not symmetric".into()));
        }
        let mut sym = (&w + w.transpose()) * 0.5;
        for e in sym.iter_mut() {
            if *e < 0.0 {
                if *e < -1e-10 * scale {
                    return Err(Error::InvalidInput(
                        "affinity has negative entries".into(),
                    ));
                }
                *e = 0.0;
            }
        }
        for i in 0..n {
            if sym[(i, i)] > 1e-10 * scale {
                return Err(Error::InvalidInput(format!(
                    "affinity diagonal entry {i} is {}, expected zero",
                    sym[(i, i)]
                )));
            }
            sym[(i, i)] = 0.0;
        }
        Ok(Affinity { w: sym })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.w
    }

    pub fn n(&self) -> usize {
        self.w.nrows()
    }
}

/// Builds the symmetric-normalized Laplacian of the affinity:
/// `L = I − D^{-1/2}·W·D^{-1/2}`, with isolated vertices (zero degree)
/// keeping their normalized row/column at zero.
pub fn normalized_laplacian(w: &Affinity) -> DMatrix<f64> {
    let n = w.n();
    let m = w.matrix();
    let inv_sqrt: Vec<f64> = (0..n)
        .map(|i| {
            let d = m.row(i).sum();
            if d > 0.0 {
                1.0 / d.sqrt()
            } else {
                0.0
            }
        })
        .collect();
    let mut l = DMatrix::identity(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let s = inv_sqrt[i] * m[(i, j)] * inv_sqrt[j];
            l[(i, j)] -= s;
            l[(j, i)] -= s;
        }
    }
    l
}

/// Spectral clustering: embed via the `k` smallest Laplacian eigenvectors,
/// row-normalize, and run k-means with 20 restarts. Deterministic given
/// `seed`. An all-isolated (zero) affinity is still clustered but flagged
/// as degenerate in the logs.
pub fn spectral_cluster(w: &Affinity, k: usize, seed: u64) -> Result<Vec<usize>> {
    let n = w.n();
    if k < 1 || k > n {
        return Err(Error::InvalidInput(format!(
            "spectral_cluster requires 1 <= k <= N, got k={k}, N={n}"
        )));
    }
    if w.matrix().iter().all(|&x| x == 0.0) {
        log::warn!("spectral_cluster: affinity is identically zero; labels are arbitrary");
    }

    let l = normalized_laplacian(w);
    let eig = sym_eig(&l, k)?;

    let mut embedding = eig.vectors;
    for mut row in embedding.row_iter_mut() {
        let norm = row.norm();
        if norm > 0.0 {
            row /= norm;
        }
    }

    kmeans(&embedding, k, 20, seed)
}
