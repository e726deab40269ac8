//! Dense linear-algebra and combinatorial primitives.
//!
//! Everything downstream (solver, spectral step, metrics) treats these as
//! oracles: deterministic output for identical input, fixed sign
//! conventions, explicit seeds for anything randomized.

mod assignment;
mod eig;
mod kmeans;
mod svd;

pub use assignment::optimal_assignment;
pub use eig::{sym_eig, SymEig};
pub use kmeans::{kmeans, kmeans_run, KMeansRun};
pub use svd::{thin_svd, ThinSvd};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Soft-thresholding (shrinkage) operator, the proximal map of `t·|·|`:
/// `sign(a) * max(|a| - t, 0)`.
#[inline]
pub fn soft_threshold(a: f64, t: f64) -> f64 {
    if a > t {
        a - t
    } else if a < -t {
        a + t
    } else {
        0.0
    }
}

pub(crate) fn ensure_finite(a: &DMatrix<f64>, what: &str) -> Result<()> {
    if a.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{what} has non-finite entries")))
    }
}

/// Flip the sign of each column so its largest-magnitude entry is positive.
/// Ties in magnitude resolve to the lowest row index.
pub(crate) fn fix_column_signs(m: &mut DMatrix<f64>) {
    for mut col in m.column_iter_mut() {
        let mut best = 0usize;
        let mut best_abs = 0.0f64;
        for (i, &x) in col.iter().enumerate() {
            if x.abs() > best_abs {
                best_abs = x.abs();
                best = i;
            }
        }
        if col[best] < 0.0 {
            col.neg_mut();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn soft_threshold_regions() {
        assert_eq!(soft_threshold(3.0, 1.0), 2.0);
        assert_eq!(soft_threshold(-3.0, 1.0), -2.0);
        assert_eq!(soft_threshold(0.5, 1.0), 0.0);
        assert_eq!(soft_threshold(-0.5, 1.0), 0.0);
        assert_eq!(soft_threshold(1.0, 1.0), 0.0);
        assert_eq!(soft_threshold(2.0, 0.0), 2.0);
    }

    #[test]
    fn sign_fix_makes_dominant_entry_positive() {
        let mut m = DMatrix::from_column_slice(3, 2, &[0.1, -0.9, 0.2, 0.5, 0.5, -0.1]);
        fix_column_signs(&mut m);
        assert!(m[(1, 0)] > 0.0);
        // tie between rows 0 and 1 resolves to row 0
        assert!(m[(0, 1)] > 0.0);
    }
}
