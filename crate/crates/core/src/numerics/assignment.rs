//! Exact minimum-cost assignment (Hungarian method, O(n³) shortest
//! augmenting path formulation with dual potentials).

use nalgebra::DMatrix;

use crate::error::{Error, Result};

use super::ensure_finite;

/// Returns the permutation `perm` minimizing `Σ_i cost[(i, perm[i])]` over
/// all permutations of a square cost matrix.
pub fn optimal_assignment(cost: &DMatrix<f64>) -> Result<Vec<usize>> {
    let n = cost.nrows();
    if n != cost.ncols() {
        return Err(Error::InvalidInput(format!(
            "optimal_assignment requires a square matrix, got {}x{}",
            n,
            cost.ncols()
        )));
    }
    ensure_finite(cost, "optimal_assignment input")?;
    if n == 0 {
        return Ok(Vec::new());
    }

    // 1-based arrays; index 0 is the virtual unmatched column.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut matched_row = vec![0usize; n + 1]; // row matched to column j, 0 = free
    let mut way = vec![0usize; n + 1];

    for row in 1..=n {
        matched_row[0] = row;
        let mut j0 = 0usize;
        let mut min_slack = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let slack = cost[(i0 - 1, j - 1)] - u[i0] - v[j];
                if slack < min_slack[j] {
                    min_slack[j] = slack;
                    way[j] = j0;
                }
                if min_slack[j] < delta {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[matched_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }
        // augment along the alternating path
        loop {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut perm = vec![0usize; n];
    for j in 1..=n {
        perm[matched_row[j] - 1] = j - 1;
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn total(cost: &DMatrix<f64>, perm: &[usize]) -> f64 {
        perm.iter().enumerate().map(|(i, &j)| cost[(i, j)]).sum()
    }

    #[test]
    fn zero_diagonal_picks_identity() {
        let c = DMatrix::from_row_slice(3, 3, &[0.0, 5.0, 9.0, 4.0, 0.0, 3.0, 2.0, 6.0, 0.0]);
        let p = optimal_assignment(&c).unwrap();
        assert_eq!(p, vec![0, 1, 2]);
        assert_eq!(total(&c, &p), 0.0);
    }

    #[test]
    fn two_by_two_swap() {
        let c = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let p = optimal_assignment(&c).unwrap();
        assert_eq!(p, vec![1, 0]);
        assert_eq!(total(&c, &p), 2.0);
    }

    #[test]
    fn matches_brute_force_on_random_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for n in 2..=6usize {
            for _ in 0..20 {
                let c = DMatrix::from_fn(n, n, |_, _| rng.gen_range(0..50) as f64);
                let p = optimal_assignment(&c).unwrap();
                assert!((total(&c, &p) - brute_force_min(&c)).abs() < 1e-9);
            }
        }
    }

    fn brute_force_min(cost: &DMatrix<f64>) -> f64 {
        let n = cost.nrows();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = f64::INFINITY;
        permute(&mut perm, 0, &mut |p| {
            let t: f64 = p.iter().enumerate().map(|(i, &j)| cost[(i, j)]).sum();
            if t < best {
                best = t;
            }
        });
        best
    }

    fn permute(items: &mut Vec<usize>, start: usize, visit: &mut impl FnMut(&[usize])) {
        if start == items.len() {
            visit(items);
            return;
        }
        for i in start..items.len() {
            items.swap(start, i);
            permute(items, start + 1, visit);
            items.swap(start, i);
        }
    }

    #[test]
    fn rejects_non_square_and_non_finite() {
        let rect = DMatrix::from_row_slice(2, 3, &[1.0; 6]);
        assert!(optimal_assignment(&rect).is_err());
        let nan = DMatrix::from_row_slice(2, 2, &[1.0, f64::NAN, 0.0, 1.0]);
        assert!(optimal_assignment(&nan).is_err());
    }
}
