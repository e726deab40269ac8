//! Symmetric eigendecomposition with a deterministic ordering and sign
//! convention.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

use super::{ensure_finite, fix_column_signs};

/// The `k` smallest eigenpairs of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymEig {
    /// Eigenvalues in ascending order, length `k`.
    pub values: Vec<f64>,
    /// Corresponding eigenvectors as orthonormal columns, `n × k`.
    /// Each column is sign-fixed so its largest-magnitude entry is positive.
    pub vectors: DMatrix<f64>,
}

/// Computes the `k` smallest eigenpairs of a symmetric matrix.
///
/// The input is symmetrized defensively as `(A + Aᵀ)/2`; asymmetry beyond
/// `1e-10` (relative to the Frobenius norm) is rejected.
pub fn sym_eig(a: &DMatrix<f64>, k: usize) -> Result<SymEig> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::InvalidInput(format!(
            "sym_eig requires a square matrix, got {}x{}",
            n,
            a.ncols()
        )));
    }
    if k > n {
        return Err(Error::InvalidInput(format!(
            "sym_eig requested {k} eigenpairs from a {n}x{n} matrix"
        )));
    }
    ensure_finite(a, "sym_eig input")?;

    let scale = a.norm().max(1.0);
    let asym = (a - a.transpose()).norm();
    if asym > 1e-10 * scale {
        return Err(Error::InvalidInput(format!(
            "sym_eig input is not symmetric: ‖A−Aᵀ‖ = {asym:.3e} exceeds 1e-10·‖A‖"
        )));
    }
    let sym = (a + a.transpose()) * 0.5;

    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 0).ok_or_else(|| {
        Error::NumericalFailure(format!("symmetric eigensolver did not converge (n={n})"))
    })?;

    // ascending, stable across ties
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[i]
            .partial_cmp(&eig.eigenvalues[j])
            .expect("finite eigenvalues")
    });

    let values: Vec<f64> = order.iter().take(k).map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, k);
    for (dst, &src) in order.iter().take(k).enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    fix_column_signs(&mut vectors);

    Ok(SymEig { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn identity_eigenvalues_are_ones() {
        let eye = DMatrix::<f64>::identity(3, 3);
        let e = sym_eig(&eye, 3).unwrap();
        for v in &e.values {
            assert_relative_eq!(*v, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn diagonal_case_sorted_ascending() {
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![3.0, 1.0, 2.0]));
        let e = sym_eig(&d, 2).unwrap();
        assert_relative_eq!(e.values[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(e.values[1], 2.0, epsilon = 1e-12);
        // unit basis vectors, sign-fixed positive
        assert_relative_eq!(e.vectors[(1, 0)], 1.0, epsilon = 1e-12);
        assert_relative_eq!(e.vectors[(2, 1)], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn rejects_asymmetric_input() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 5.0, 0.0, 1.0]);
        assert!(matches!(sym_eig(&m, 1), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn rejects_non_finite() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, f64::NAN, f64::NAN, 1.0]);
        assert!(sym_eig(&m, 1).is_err());
    }

    #[test]
    fn residual_small_on_random_symmetric() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [4usize, 8, 16] {
            let g = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
            let a = (&g + g.transpose()) * 0.5;
            let e = sym_eig(&a, n).unwrap();
            let anorm = a.norm();
            for j in 0..n {
                let u = e.vectors.column(j);
                let r = (&a * u) - u * e.values[j];
                assert!(r.norm() <= 1e-8 * anorm.max(1.0), "residual {}", r.norm());
            }
            let vtv = e.vectors.transpose() * &e.vectors;
            assert!((vtv - DMatrix::<f64>::identity(n, n)).norm() <= 1e-8);
        }
    }
}
