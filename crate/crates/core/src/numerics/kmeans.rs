//! Lloyd's k-means with k-means++ seeding, explicit seeds, and restarts.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::parallel;

use super::ensure_finite;

const MAX_LLOYD_ITERS: usize = 100;

/// Outcome of a k-means run: the winning restart's labels, its final
/// within-cluster sum of squares, and the WCSS after each Lloyd iteration.
#[derive(Debug, Clone)]
pub struct KMeansRun {
    pub labels: Vec<usize>,
    pub wcss: f64,
    pub wcss_history: Vec<f64>,
}

/// Clusters the rows of `points` into `k` groups.
///
/// Among `restarts` independent k-means++ initializations the assignment
/// with the lowest WCSS is returned (ties: lowest restart index). Output is
/// a pure function of `(points, k, restarts, seed)`.
pub fn kmeans(points: &DMatrix<f64>, k: usize, restarts: usize, seed: u64) -> Result<Vec<usize>> {
    Ok(kmeans_run(points, k, restarts, seed)?.labels)
}

/// Like [`kmeans`] but also reports the winning restart's WCSS trajectory.
pub fn kmeans_run(points: &DMatrix<f64>, k: usize, restarts: usize, seed: u64) -> Result<KMeansRun> {
    let n = points.nrows();
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!(
            "kmeans requires 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    if restarts == 0 {
        return Err(Error::InvalidInput("kmeans requires restarts >= 1".into()));
    }
    ensure_finite(points, "kmeans input")?;

    let runs = parallel::map_indexed(restarts, |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, r as u64));
        lloyd(points, k, &mut rng)
    });

    let mut best = 0usize;
    for (r, run) in runs.iter().enumerate().skip(1) {
        if run.wcss < runs[best].wcss {
            best = r;
        }
    }
    Ok(runs.into_iter().nth(best).expect("restarts >= 1"))
}

fn mix_seed(seed: u64, stream: u64) -> u64 {
    seed ^ (stream.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn lloyd(points: &DMatrix<f64>, k: usize, rng: &mut ChaCha8Rng) -> KMeansRun {
    let n = points.nrows();
    let dim = points.ncols();
    let mut centroids = seed_centroids(points, k, rng);
    let mut labels = vec![0usize; n];
    let mut history = Vec::new();

    for _ in 0..MAX_LLOYD_ITERS {
        let mut changed = false;
        for (i, label) in labels.iter_mut().enumerate() {
            let (best, _) = nearest_centroid(points, &centroids, i, k);
            if *label != best {
                *label = best;
                changed = true;
            }
        }

        // An empty cluster steals the point farthest from its assigned
        // centroid and re-seeds there.
        let mut counts = vec![0usize; k];
        for &l in &labels {
            counts[l] += 1;
        }
        let empties: Vec<usize> = (0..k).filter(|&c| counts[c] == 0).collect();
        for c in empties {
            let mut far = 0usize;
            let mut far_d = -1.0f64;
            for (i, &l) in labels.iter().enumerate() {
                if counts[l] <= 1 {
                    continue; // don't empty another cluster
                }
                let d = (points.row(i) - centroids.row(l)).norm_squared();
                if d > far_d {
                    far_d = d;
                    far = i;
                }
            }
            counts[labels[far]] -= 1;
            labels[far] = c;
            counts[c] = 1;
            centroids.set_row(c, &points.row(far));
            changed = true;
        }

        // centroid update: per-cluster mean
        let mut sums = DMatrix::<f64>::zeros(k, dim);
        for i in 0..n {
            let mut row = sums.row_mut(labels[i]);
            row += points.row(i);
        }
        for c in 0..k {
            let mut row = sums.row_mut(c);
            row /= counts[c] as f64;
        }
        centroids = sums;

        history.push(wcss(points, &centroids, &labels));
        if !changed {
            break;
        }
    }

    let final_wcss = *history.last().expect("at least one Lloyd iteration");
    KMeansRun {
        labels,
        wcss: final_wcss,
        wcss_history: history,
    }
}

fn nearest_centroid(
    points: &DMatrix<f64>,
    centroids: &DMatrix<f64>,
    i: usize,
    k: usize,
) -> (usize, f64) {
    let mut best = 0usize;
    let mut best_d = f64::INFINITY;
    for c in 0..k {
        let d = (points.row(i) - centroids.row(c)).norm_squared();
        if d < best_d {
            best_d = d;
            best = c;
        }
    }
    (best, best_d)
}

fn wcss(points: &DMatrix<f64>, centroids: &DMatrix<f64>, labels: &[usize]) -> f64 {
    labels
        .iter()
        .enumerate()
        .map(|(i, &l)| (points.row(i) - centroids.row(l)).norm_squared())
        .sum()
}

/// k-means++: first center uniform, the rest sampled with probability
/// proportional to squared distance from the nearest chosen center.
fn seed_centroids(points: &DMatrix<f64>, k: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let n = points.nrows();
    let dim = points.ncols();
    let mut centroids = DMatrix::<f64>::zeros(k, dim);

    let first = rng.gen_range(0..n);
    centroids.set_row(0, &points.row(first));

    let mut d2: Vec<f64> = (0..n)
        .map(|i| (points.row(i) - centroids.row(0)).norm_squared())
        .collect();

    for c in 1..k {
        let total: f64 = d2.iter().sum();
        let chosen = if total > 0.0 {
            let target = rng.gen::<f64>() * total;
            let mut cum = 0.0;
            let mut idx = n - 1;
            for (i, &d) in d2.iter().enumerate() {
                cum += d;
                if cum >= target {
                    idx = i;
                    break;
                }
            }
            idx
        } else {
            rng.gen_range(0..n) // all points coincide with chosen centers
        };
        centroids.set_row(c, &points.row(chosen));
        for (i, slot) in d2.iter_mut().enumerate() {
            let d = (points.row(i) - centroids.row(c)).norm_squared();
            if d < *slot {
                *slot = d;
            }
        }
    }
    centroids
}
