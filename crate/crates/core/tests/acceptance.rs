//! Acceptance suite: one test per criterion. Each test prints a PASS line
//! with its elapsed time and enforces its runtime budget; a failed
//! assertion fails the criterion. Expected values come from brute-force
//! oracles implemented here, independent of the library's own paths.

mod common;

use std::time::Instant;

use common::jacobi_eig;
use mvsc_core::dataset::{synthesize, SynthSpec};
use mvsc_core::metrics::{acc, aggregate, ari, nmi, pairwise_prf, MetricsReport};
use mvsc_core::pipeline::run_trials;
use mvsc_core::solver::{
    fit, fit_with_hook, fuse_affinity, update_continuous_traced, update_discrete, update_error,
    update_representation_row, update_rotation, Hyperparams, SweepSnapshot,
};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn orl_weights() -> Hyperparams {
    Hyperparams::new(0.002, 0.5, 0.1)
}

fn random_orthonormal(n: usize, k: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, k, |_, _| rng.gen_range(-1.0..1.0));
    g.qr().q()
}

fn random_one_hot(n: usize, k: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let mut f = DMatrix::zeros(n, k);
    for i in 0..n {
        f[(i, rng.gen_range(0..k))] = 1.0;
    }
    f
}

fn random_graph_laplacian(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let raw = DMatrix::from_fn(n, n, |i, j| if i == j { 0.0 } else { rng.gen_range(0.0..1.0) });
    let w = (&raw + raw.transpose()) * 0.5;
    let deg = DVector::from_iterator(n, (0..n).map(|i| w.row(i).sum()));
    DMatrix::from_diagonal(&deg) - &w
}

fn finish(criterion: usize, name: &str, started: Instant, budget_s: f64, detail: &str) {
    let elapsed = started.elapsed().as_secs_f64();
    assert!(
        elapsed < budget_s,
        "criterion {criterion} exceeded its {budget_s}s budget: {elapsed:.1}s"
    );
    println!("acceptance criterion {criterion} ({name}): PASS [{elapsed:.1}s] {detail}");
}

// ---------------------------------------------------------------------------
// 1. objective descent on random synthetic configs

#[test]
fn criterion_1_objective_descent() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let mut converged = 0usize;

    for i in 0..20u64 {
        let k = 2 + (i as usize % 4);
        let per_cluster = rng.gen_range(12..=(120 / k).min(24));
        let subspace_dim = rng.gen_range(2..=4usize);
        let dims = vec![
            rng.gen_range(18..=40usize),
            rng.gen_range(18..=40usize),
            rng.gen_range(18..=40usize),
        ];
        let noise = [0.0, 0.01, 0.02][i as usize % 3];
        let ds = synthesize(&SynthSpec {
            k,
            per_cluster,
            ambient_dims: dims,
            subspace_dim,
            noise_sigma: noise,
            seed: 7000 + i,
        })
        .unwrap();

        let h = orl_weights().with_seed(9000 + i);
        let mut objectives = Vec::new();
        let out = fit_with_hook(&ds, k, &h, |snap| objectives.push(snap.objective)).unwrap();
        for pair in objectives.windows(2) {
            assert!(
                pair[1] <= pair[0] + 1e-8,
                "config {i}: objective rose {} -> {}",
                pair[0],
                pair[1]
            );
        }
        if out.trace.converged {
            converged += 1;
        }
    }
    assert!(converged >= 18, "only {converged}/20 configs converged");
    finish(
        1,
        "objective descent",
        started,
        60.0,
        &format!("{converged}/20 converged"),
    );
}

// ---------------------------------------------------------------------------
// 2. per-update optimality oracles

fn soft_oracle(a: f64, t: f64) -> f64 {
    if a > t {
        a - t
    } else if a < -t {
        a + t
    } else {
        0.0
    }
}

/// Grid minimizer of f(z) = (z − v)²·s + w·|z| at resolution 1e-4.
fn grid_minimizer(v: f64, s: f64, w: f64) -> f64 {
    let range = v.abs() + 0.5;
    let step = 1e-4;
    let steps = (2.0 * range / step).ceil() as usize;
    let mut best_z = -range;
    let mut best_f = f64::INFINITY;
    for i in 0..=steps {
        let z = -range + i as f64 * step;
        let f = (z - v) * (z - v) * s + w * z.abs();
        if f < best_f {
            best_f = f;
            best_z = z;
        }
    }
    best_z
}

fn oracle_a_representation_rows(rng: &mut ChaCha8Rng) -> usize {
    let mut checked = 0usize;
    while checked < 1000 {
        let (d, n) = (6usize, 8usize);
        let x = DMatrix::from_fn(d, n, |_, _| rng.gen_range(-1.0..1.0));
        let z = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                0.0
            } else {
                rng.gen_range(-0.5..0.5)
            }
        });
        let e = DMatrix::from_fn(d, n, |_, _| rng.gen_range(-0.2..0.2));
        let y = {
            let raw = DMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    0.0
                } else {
                    rng.gen_range(0.0..1.5)
                }
            });
            (&raw + raw.transpose()) * 0.5
        };
        let lambda2 = rng.gen_range(0.05..2.0);
        let row = rng.gen_range(0..n);

        // independent target: the row-removed residual from the raw formula
        let xi = x.column(row).into_owned();
        let s = xi.norm_squared();
        let removed = &x - (&x * &z - &xi * z.row(row)) - &e;
        let v = removed.transpose() * &xi / s;

        let mut z_new = z.clone();
        let mut residual = &x - &x * &z - &e;
        update_representation_row(&x, &mut z_new, &mut residual, &y, lambda2, row, "test")
            .unwrap();

        for j in 0..n {
            if j == row {
                assert_eq!(z_new[(row, j)], 0.0);
                continue;
            }
            let w = lambda2 / 2.0 * y[(row, j)];
            let z_star = grid_minimizer(v[j], s, w);
            assert!(
                (z_new[(row, j)] - z_star).abs() <= 1e-4,
                "entry off grid minimizer: {} vs {z_star}",
                z_new[(row, j)]
            );
            checked += 1;
        }
    }
    checked
}

fn oracle_b_error_shrinkage(rng: &mut ChaCha8Rng) {
    for _ in 0..100 {
        let (d, n) = (5usize, 7usize);
        let x = DMatrix::from_fn(d, n, |_, _| rng.gen_range(-1.0..1.0));
        let z = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                0.0
            } else {
                rng.gen_range(-0.4..0.4)
            }
        });
        let lambda1 = rng.gen_range(0.0..1.0);
        let mut e = DMatrix::zeros(d, n);
        let mut residual = DMatrix::zeros(d, n);
        update_error(&x, &z, &mut e, &mut residual, lambda1);

        let r = &x - &x * &z;
        for (idx, &rv) in r.iter().enumerate() {
            assert_eq!(e[idx], soft_oracle(rv, lambda1 / 2.0), "entry {idx} not exact");
        }
    }
}

fn oracle_c_rotation(rng: &mut ChaCha8Rng) {
    for _ in 0..50 {
        let n = 10usize;
        let k = rng.gen_range(2..=4usize);
        let p = random_orthonormal(n, k, rng);
        let f = random_one_hot(n, k, rng);
        let q = update_rotation(&f, &p).unwrap();

        let c = p.transpose() * &f;
        let attained = (q.transpose() * &c).trace();
        for _ in 0..10_000 {
            let contender = random_orthonormal(k, k, rng);
            let val = (contender.transpose() * &c).trace();
            assert!(
                val <= attained + 1e-9,
                "random rotation beat the Procrustes solve: {val} > {attained}"
            );
        }

        // KKT certificate: QᵀPᵀF symmetric positive semidefinite
        let m = q.transpose() * &c;
        assert!((&m - m.transpose()).norm() <= 1e-8, "KKT matrix not symmetric");
        let msym = (&m + m.transpose()) * 0.5;
        let (vals, _) = jacobi_eig(&msym);
        assert!(vals[0] >= -1e-8, "KKT matrix indefinite: min eig {}", vals[0]);
    }
}

fn oracle_d_discrete(rng: &mut ChaCha8Rng) {
    for n in 2..=8usize {
        for k in 2..=3usize {
            for _ in 0..5 {
                let m = DMatrix::from_fn(n, k, |_, _| rng.gen_range(-1.0..1.0));
                let f = update_discrete(&m);
                let attained = (f.transpose() * &m).trace();

                let mut best = f64::NEG_INFINITY;
                for code in 0..k.pow(n as u32) {
                    let mut c = code;
                    let mut val = 0.0;
                    for i in 0..n {
                        val += m[(i, c % k)];
                        c /= k;
                    }
                    best = best.max(val);
                }
                assert!(
                    (attained - best).abs() <= 1e-12,
                    "argmax rows missed the enumerated optimum: {attained} vs {best}"
                );
                for i in 0..n {
                    assert_eq!(f.row(i).iter().filter(|&&v| v == 1.0).count(), 1);
                    assert_eq!(f.row(i).sum(), 1.0);
                }
            }
        }
    }
}

fn oracle_e_stiefel(rng: &mut ChaCha8Rng) {
    for _ in 0..20 {
        let n = rng.gen_range(15..=40usize);
        let k = rng.gen_range(2..=4usize);
        let l = random_graph_laplacian(n, rng);
        let p0 = random_orthonormal(n, k, rng);
        let f = random_one_hot(n, k, rng);
        let q = random_orthonormal(k, k, rng);

        let (p, history) = update_continuous_traced(&l, &f, &q, 1.0, 0.0, &p0).unwrap();
        for pair in history.windows(2) {
            assert!(pair[1] <= pair[0] + 1e-9 * pair[0].abs().max(1.0));
        }
        let attained = (&l * &p).component_mul(&p).sum();
        let eig = mvsc_core::numerics::sym_eig(&l, k).unwrap();
        let target: f64 = eig.values.iter().sum();
        assert!(
            (attained - target).abs() <= 1e-6,
            "trace {attained} vs sum of {k} smallest eigenvalues {target}"
        );
    }
}

#[test]
fn criterion_2_update_oracles() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2002);
    let scalar_checks = oracle_a_representation_rows(&mut rng);
    oracle_b_error_shrinkage(&mut rng);
    oracle_c_rotation(&mut rng);
    oracle_d_discrete(&mut rng);
    oracle_e_stiefel(&mut rng);
    finish(
        2,
        "per-update optimality oracles",
        started,
        120.0,
        &format!("{scalar_checks} scalar subproblems checked"),
    );
}

// ---------------------------------------------------------------------------
// 3. end-to-end recovery on the reference synthetic fixture

fn reference_spec(noise: f64) -> SynthSpec {
    SynthSpec {
        k: 4,
        per_cluster: 40,
        ambient_dims: vec![50, 60, 40],
        subspace_dim: 4,
        noise_sigma: noise,
        seed: 33011,
    }
}

#[test]
fn criterion_3_end_to_end_recovery() {
    let started = Instant::now();
    let ds = synthesize(&reference_spec(0.01)).unwrap();
    let truth = ds.labels().unwrap().to_vec();
    let h = orl_weights().with_seed(501);

    let runs = run_trials(&ds, 4, &h, 10);
    let mut reports = Vec::new();
    for run in &runs {
        let outcome = run.result.as_ref().expect("trial failed");
        reports.push(MetricsReport::compute(&outcome.labels, &truth).unwrap());
    }
    let agg = aggregate(&reports).unwrap();
    assert!(
        agg.mean.acc >= 0.95,
        "mean ACC {:.4} below 0.95",
        agg.mean.acc
    );
    assert!(
        agg.mean.nmi >= 0.90,
        "mean NMI {:.4} below 0.90",
        agg.mean.nmi
    );
    finish(
        3,
        "end-to-end recovery",
        started,
        300.0,
        &format!(
            "ACC {:.3}, NMI {:.3} over 10 trials",
            agg.mean.acc, agg.mean.nmi
        ),
    );
}

// ---------------------------------------------------------------------------
// 4. block structure of the fused affinity, joint vs ablation

fn within_block_mass(w: &DMatrix<f64>, labels: &[usize]) -> f64 {
    let mut inside = 0.0;
    let mut total = 0.0;
    for i in 0..w.nrows() {
        for j in 0..w.ncols() {
            total += w[(i, j)];
            if labels[i] == labels[j] {
                inside += w[(i, j)];
            }
        }
    }
    assert!(total > 0.0, "affinity has no mass");
    inside / total
}

#[test]
fn criterion_4_block_structure() {
    let started = Instant::now();
    let ds = synthesize(&reference_spec(0.0)).unwrap();
    let labels = ds.labels().unwrap().to_vec();

    let joint = fit(&ds, 4, &orl_weights().with_seed(4242)).unwrap();
    let joint_mass = within_block_mass(&fuse_affinity(&joint.state.views), &labels);

    // no-joint-learning ablation: spectral and coupling terms switched off
    let ablation_h = Hyperparams::new(0.002, 0.0, 0.0).with_seed(4242);
    let ablation = fit(&ds, 4, &ablation_h).unwrap();
    let ablation_mass = within_block_mass(&fuse_affinity(&ablation.state.views), &labels);

    assert!(
        joint_mass >= 0.80,
        "within-block mass {joint_mass:.4} below 0.80"
    );
    assert!(
        joint_mass >= ablation_mass,
        "joint {joint_mass:.4} worse than ablation {ablation_mass:.4}"
    );
    finish(
        4,
        "affinity block structure",
        started,
        300.0,
        &format!("joint {joint_mass:.3} vs ablation {ablation_mass:.3}"),
    );
}

// ---------------------------------------------------------------------------
// 5. metric oracles

fn random_labels(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..k)).collect()
}

fn acc_brute_force(pred: &[usize], truth: &[usize]) -> f64 {
    let kp = pred.iter().max().unwrap() + 1;
    let kt = truth.iter().max().unwrap() + 1;
    let k = kp.max(kt);
    let mut ids: Vec<usize> = (0..k).collect();
    let mut best = 0usize;
    permute(&mut ids, 0, &mut |perm| {
        let hits = pred
            .iter()
            .zip(truth)
            .filter(|(&p, &t)| perm[p] == t)
            .count();
        if hits > best {
            best = hits;
        }
    });
    best as f64 / pred.len() as f64
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

/// Pair counts: (together in both, together in truth only, together in
/// pred only, together in neither).
fn pair_counts(pred: &[usize], truth: &[usize]) -> (f64, f64, f64, f64) {
    let n = pred.len();
    let (mut a, mut b, mut c, mut d) = (0u64, 0u64, 0u64, 0u64);
    for i in 0..n {
        for j in (i + 1)..n {
            match (pred[i] == pred[j], truth[i] == truth[j]) {
                (true, true) => a += 1,
                (false, true) => b += 1,
                (true, false) => c += 1,
                (false, false) => d += 1,
            }
        }
    }
    (a as f64, b as f64, c as f64, d as f64)
}

/// NMI via MI = H(pred) + H(truth) − H(joint), a different algebraic route
/// than the implementation's direct p·ln(p/(q·r)) sum.
fn nmi_entropy_route(pred: &[usize], truth: &[usize]) -> f64 {
    let n = pred.len() as f64;
    let ent = |keys: Vec<(usize, usize)>| -> f64 {
        let mut sorted = keys;
        sorted.sort_unstable();
        let mut h = 0.0;
        let mut i = 0;
        while i < sorted.len() {
            let mut j = i;
            while j < sorted.len() && sorted[j] == sorted[i] {
                j += 1;
            }
            let p = (j - i) as f64 / n;
            h -= p * p.ln();
            i = j;
        }
        h
    };
    let hp = ent(pred.iter().map(|&p| (p, 0)).collect());
    let ht = ent(truth.iter().map(|&t| (t, 0)).collect());
    let hj = ent(pred.iter().zip(truth).map(|(&p, &t)| (p, t)).collect());
    if hp <= 0.0 || ht <= 0.0 {
        let canon = |l: &[usize]| -> Vec<usize> {
            let k = l.iter().max().unwrap() + 1;
            let mut rename = vec![usize::MAX; k];
            let mut next = 0;
            l.iter()
                .map(|&x| {
                    if rename[x] == usize::MAX {
                        rename[x] = next;
                        next += 1;
                    }
                    rename[x]
                })
                .collect()
        };
        return if canon(pred) == canon(truth) { 1.0 } else { 0.0 };
    }
    ((hp + ht - hj) / (hp * ht).sqrt()).clamp(0.0, 1.0)
}

#[test]
fn criterion_5_metric_oracles() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5005);

    // accuracy vs factorial enumeration
    for _ in 0..200 {
        let n = rng.gen_range(8..=30usize);
        let k = rng.gen_range(2..=6usize);
        let pred = random_labels(n, k, &mut rng);
        let truth = random_labels(n, rng.gen_range(2..=6usize), &mut rng);
        let fast = acc(&pred, &truth).unwrap();
        let brute = acc_brute_force(&pred, &truth);
        assert!((fast - brute).abs() <= 1e-12, "acc {fast} vs brute {brute}");
    }

    // ARI and pairwise P/R/F vs pair enumeration
    for _ in 0..200 {
        let n = rng.gen_range(5..=40usize);
        let k = rng.gen_range(2..=5usize);
        let pred = random_labels(n, k, &mut rng);
        let truth = random_labels(n, rng.gen_range(2..=5usize), &mut rng);
        let (a, b, c, _d) = pair_counts(&pred, &truth);

        let (p, r, f) = pairwise_prf(&pred, &truth).unwrap();
        let p_o = if a + c > 0.0 { a / (a + c) } else { 0.0 };
        let r_o = if a + b > 0.0 { a / (a + b) } else { 0.0 };
        let f_o = if p_o + r_o > 0.0 {
            2.0 * p_o * r_o / (p_o + r_o)
        } else {
            0.0
        };
        assert!((p - p_o).abs() <= 1e-12);
        assert!((r - r_o).abs() <= 1e-12);
        assert!((f - f_o).abs() <= 1e-12);

        let total = (n * (n - 1)) as f64 / 2.0;
        let expected = (a + c) * (a + b) / total;
        let max_index = (2.0 * a + b + c) / 2.0;
        let ari_o = if (max_index - expected).abs() < 1e-12 {
            1.0
        } else {
            (a - expected) / (max_index - expected)
        };
        let ari_impl = ari(&pred, &truth).unwrap();
        assert!(
            (ari_impl - ari_o).abs() <= 1e-12,
            "ari {ari_impl} vs pair-count oracle {ari_o}"
        );
    }

    // NMI on frozen fixtures (independently computed via the entropy route)
    let fixtures: [(&[usize], &[usize], f64); 5] = [
        (&[0, 0, 1, 1, 2, 2], &[0, 0, 0, 1, 1, 1], 0.5295405780575617),
        (&[0, 1, 0, 1], &[0, 0, 1, 1], 0.0),
        (&[0, 0, 0, 1, 1, 2], &[0, 1, 0, 1, 0, 1], 0.17179387755384387),
        (&[0, 0, 1, 1], &[0, 0, 1, 1], 1.0),
        (
            &[0, 0, 0, 0, 1, 1, 2, 2, 2],
            &[0, 0, 1, 1, 1, 2, 2, 0, 1],
            0.2192140336970245,
        ),
    ];
    for (pred, truth, expected) in fixtures {
        let got = nmi(pred, truth).unwrap();
        assert!(
            (got - expected).abs() <= 1e-12,
            "nmi {got} vs frozen {expected}"
        );
    }

    // and against the entropy-route oracle on random instances
    for _ in 0..200 {
        let n = rng.gen_range(4..=40usize);
        let pred = random_labels(n, rng.gen_range(2..=5usize), &mut rng);
        let truth = random_labels(n, rng.gen_range(2..=5usize), &mut rng);
        let got = nmi(&pred, &truth).unwrap();
        let oracle = nmi_entropy_route(&pred, &truth);
        assert!((got - oracle).abs() <= 1e-12, "nmi {got} vs oracle {oracle}");
    }

    finish(5, "metric oracles", started, 30.0, "200 instances per metric");
}

// ---------------------------------------------------------------------------
// 6. constraint invariants at every iteration

fn assert_snapshot_invariants(snap: &SweepSnapshot, k: usize) {
    let p = &snap.shared.continuous;
    let q = &snap.shared.rotation;
    let f = &snap.shared.discrete;
    let eye = DMatrix::<f64>::identity(k, k);
    assert!(
        (p.transpose() * p - &eye).norm() <= 1e-8,
        "iter {}: PᵀP far from identity",
        snap.iteration
    );
    assert!(
        (q.transpose() * q - &eye).norm() <= 1e-8,
        "iter {}: QᵀQ far from identity",
        snap.iteration
    );
    for i in 0..f.nrows() {
        assert_eq!(
            f.row(i).iter().filter(|&&v| v == 1.0).count(),
            1,
            "iter {}: row {i} of the discrete indicator is not one-hot",
            snap.iteration
        );
        assert!(f.row(i).iter().all(|&v| v == 0.0 || v == 1.0));
    }
    for view in &snap.views {
        let z = &view.representation;
        let w = &view.affinity;
        let l = &view.laplacian;
        for i in 0..z.nrows() {
            assert_eq!(z[(i, i)], 0.0, "iter {}: nonzero diagonal", snap.iteration);
        }
        for i in 0..w.nrows() {
            for j in 0..w.ncols() {
                assert!(w[(i, j)] >= 0.0);
                assert_eq!(w[(i, j)], w[(j, i)], "affinity asymmetric");
            }
        }
        let row_sums = l * DVector::from_element(l.nrows(), 1.0);
        assert!(
            row_sums.amax() <= 1e-10,
            "iter {}: Laplacian row sums up to {}",
            snap.iteration,
            row_sums.amax()
        );
    }
}

#[test]
fn criterion_6_constraint_invariants() {
    let started = Instant::now();
    let configs: Vec<(SynthSpec, Hyperparams)> = vec![
        (
            SynthSpec {
                k: 2,
                per_cluster: 10,
                ambient_dims: vec![12, 9, 15],
                subspace_dim: 2,
                noise_sigma: 0.0,
                seed: 61,
            },
            orl_weights().with_seed(610),
        ),
        (
            SynthSpec {
                k: 3,
                per_cluster: 8,
                ambient_dims: vec![10, 14],
                subspace_dim: 3,
                noise_sigma: 0.05,
                seed: 62,
            },
            Hyperparams::new(0.003, 0.7, 0.2).with_seed(620),
        ),
        (
            // ablation: joint terms off
            SynthSpec {
                k: 4,
                per_cluster: 6,
                ambient_dims: vec![16, 11],
                subspace_dim: 2,
                noise_sigma: 0.02,
                seed: 63,
            },
            Hyperparams::new(0.002, 0.0, 0.0).with_seed(630),
        ),
        (
            // no sparsity on the error term
            SynthSpec {
                k: 2,
                per_cluster: 12,
                ambient_dims: vec![9],
                subspace_dim: 2,
                noise_sigma: 0.1,
                seed: 64,
            },
            Hyperparams::new(0.0, 0.5, 0.1).with_seed(640),
        ),
        (
            SynthSpec {
                k: 5,
                per_cluster: 7,
                ambient_dims: vec![20, 18, 22],
                subspace_dim: 3,
                noise_sigma: 0.01,
                seed: 65,
            },
            orl_weights().with_seed(650),
        ),
    ];

    let mut sweeps_checked = 0usize;
    for (spec, mut h) in configs {
        h.max_iters = 12;
        let ds = synthesize(&spec).unwrap();
        let mut prev = f64::INFINITY;
        fit_with_hook(&ds, spec.k, &h, |snap| {
            assert_snapshot_invariants(snap, spec.k);
            assert!(
                snap.objective <= prev + 1e-8,
                "objective rose across sweep {}",
                snap.iteration
            );
            prev = snap.objective;
            sweeps_checked += 1;
        })
        .unwrap();
    }
    finish(
        6,
        "constraint invariants",
        started,
        120.0,
        &format!("{sweeps_checked} sweeps checked"),
    );
}
