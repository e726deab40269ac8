//! Thin singular value decomposition with deterministic ordering and signs.

use nalgebra::{DMatrix, DVector, SVD};

use crate::error::{Error, Result};

use super::ensure_finite;

/// Thin SVD `A = U·diag(S)·Vᵀ` with `S` nonincreasing and nonnegative.
#[derive(Debug, Clone)]
pub struct ThinSvd {
    /// `m × r` with orthonormal columns, `r = min(m, n)`.
    pub u: DMatrix<f64>,
    /// Singular values, nonincreasing, length `r`.
    pub s: Vec<f64>,
    /// `n × r` with orthonormal columns.
    pub v: DMatrix<f64>,
}

/// Computes the thin SVD of a dense matrix.
///
/// Singular vector pairs are sign-fixed jointly (the largest-magnitude entry
/// of each left vector is positive) so repeated calls on identical input
/// produce identical factors.
pub fn thin_svd(a: &DMatrix<f64>) -> Result<ThinSvd> {
    ensure_finite(a, "thin_svd input")?;
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("thin_svd of an empty matrix".into()));
    }

    // 5·ε matches what nalgebra's own `svd()` wrapper passes; a tighter
    // deflation threshold visibly degrades rank-deficient factorizations
    let svd = SVD::try_new(a.clone(), true, true, 5.0 * f64::EPSILON, 0).ok_or_else(|| {
        Error::NumericalFailure(format!("SVD did not converge on a {m}x{n} matrix"))
    })?;
    let u_raw = svd.u.expect("requested U");
    let vt_raw = svd.v_t.expect("requested Vᵀ");
    let r = svd.singular_values.len();

    // nonincreasing order, stable under ties
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&i, &j| {
        svd.singular_values[j]
            .partial_cmp(&svd.singular_values[i])
            .expect("finite singular values")
    });

    let mut u = DMatrix::zeros(m, r);
    let mut v = DMatrix::zeros(n, r);
    let mut s = Vec::with_capacity(r);
    for (dst, &src) in order.iter().enumerate() {
        u.set_column(dst, &u_raw.column(src));
        v.set_column(dst, &vt_raw.row(src).transpose());
        s.push(svd.singular_values[src]);
    }

    // The singular vectors attached to (near-)zero singular values can come
    // back visibly non-orthogonal on rank-deficient input; they carry no
    // weight in U·Σ·Vᵀ, so rebuild them as an orthonormal completion.
    let rank_tol = s.first().copied().unwrap_or(0.0) * 1e-12;
    if let Some(first_tiny) = s.iter().position(|&x| x <= rank_tol) {
        reorthonormalize_tail(&mut u, first_tiny);
        reorthonormalize_tail(&mut v, first_tiny);
    }

    // joint sign fix: flipping u_i and v_i together preserves the product
    for j in 0..r {
        let col = u.column(j);
        let mut best = 0usize;
        let mut best_abs = 0.0f64;
        for (i, &x) in col.iter().enumerate() {
            if x.abs() > best_abs {
                best_abs = x.abs();
                best = i;
            }
        }
        if u[(best, j)] < 0.0 {
            u.column_mut(j).neg_mut();
            v.column_mut(j).neg_mut();
        }
    }

    Ok(ThinSvd { u, s, v })
}

/// Re-orthonormalizes columns `from..` against all preceding columns
/// (two-pass modified Gram-Schmidt). A column that collapses under
/// projection is replaced by the first standard basis vector with a
/// sizable orthogonal remainder.
fn reorthonormalize_tail(m: &mut DMatrix<f64>, from: usize) {
    let nrows = m.nrows();
    for j in from..m.ncols() {
        for _pass in 0..2 {
            for i in 0..j {
                let proj = m.column(i).dot(&m.column(j));
                let prev = m.column(i).into_owned();
                m.column_mut(j).axpy(-proj, &prev, 1.0);
            }
        }
        let norm = m.column(j).norm();
        if norm > 1e-8 {
            m.column_mut(j).unscale_mut(norm);
            continue;
        }
        for e in 0..nrows {
            let mut cand = DVector::<f64>::zeros(nrows);
            cand[e] = 1.0;
            for i in 0..j {
                let proj = m.column(i).dot(&cand);
                cand.axpy(-proj, &m.column(i).into_owned(), 1.0);
            }
            let cn = cand.norm();
            if cn > 0.5 {
                cand /= cn;
                m.set_column(j, &cand);
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn reconstruct(f: &ThinSvd) -> DMatrix<f64> {
        let sigma = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(f.s.clone()));
        &f.u * sigma * f.v.transpose()
    }

    #[test]
    fn identity_has_unit_singular_values() {
        let eye = DMatrix::<f64>::identity(4, 4);
        let f = thin_svd(&eye).unwrap();
        for s in &f.s {
            assert_relative_eq!(*s, 1.0, epsilon = 1e-12);
        }
        assert_relative_eq!((reconstruct(&f) - eye).norm(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn rank_one_outer_product() {
        let a = nalgebra::DVector::from_vec(vec![1.0, 2.0, 2.0]);
        let b = nalgebra::DVector::from_vec(vec![3.0, 4.0]);
        let m = &a * b.transpose();
        let f = thin_svd(&m).unwrap();
        // single nonzero singular value = ‖a‖·‖b‖ = 3·5
        assert_relative_eq!(f.s[0], 15.0, max_relative = 1e-10);
        for s in &f.s[1..] {
            assert!(s.abs() < 1e-10);
        }
    }

    #[test]
    fn random_reconstruction_residual() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let a = DMatrix::from_fn(6, 4, |_, _| rng.gen_range(-2.0..2.0));
        let f = thin_svd(&a).unwrap();
        assert!((reconstruct(&f) - &a).norm() <= 1e-8 * a.norm());
        // orthonormal factors, nonincreasing spectrum
        let r = f.s.len();
        assert!((f.u.transpose() * &f.u - DMatrix::<f64>::identity(r, r)).norm() <= 1e-8);
        assert!((f.v.transpose() * &f.v - DMatrix::<f64>::identity(r, r)).norm() <= 1e-8);
        for w in f.s.windows(2) {
            assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn rank_deficient_factors_stay_orthonormal() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        // rank-3 12x7 product, plus a matrix with an exactly zero column
        let a = DMatrix::from_fn(12, 3, |_, _| rng.gen_range(-1.0..1.0));
        let b = DMatrix::from_fn(3, 7, |_, _| rng.gen_range(-1.0..1.0));
        let mut cases = vec![&a * &b];
        let mut with_zero = DMatrix::from_fn(5, 4, |_, _| rng.gen_range(-1.0..1.0));
        with_zero.column_mut(2).fill(0.0);
        cases.push(with_zero);
        cases.push(DMatrix::zeros(6, 3));

        for m in &cases {
            let f = thin_svd(m).unwrap();
            let r = f.s.len();
            let eye = DMatrix::<f64>::identity(r, r);
            assert!(
                (f.u.transpose() * &f.u - &eye).norm() <= 1e-10,
                "U not orthonormal: {}",
                (f.u.transpose() * &f.u - &eye).norm()
            );
            assert!((f.v.transpose() * &f.v - &eye).norm() <= 1e-10);
            assert!((reconstruct(&f) - m).norm() <= 1e-8 * m.norm().max(1.0));
        }
    }

    #[test]
    fn deterministic_across_calls() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let a = DMatrix::from_fn(5, 5, |_, _| rng.gen_range(-1.0..1.0));
        let f1 = thin_svd(&a).unwrap();
        let f2 = thin_svd(&a).unwrap();
        assert_eq!(f1.u, f2.u);
        assert_eq!(f1.s, f2.s);
        assert_eq!(f1.v, f2.v);
    }
}
