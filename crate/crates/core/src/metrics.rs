//! Clustering evaluation: NMI, accuracy, adjusted Rand index, and pairwise
//! precision / recall / F-score, plus mean±std aggregation across trials.
//!
//! All six measures are invariant to relabeling of either argument. NMI
//! normalizes mutual information by the geometric mean of the two
//! entropies; accuracy maximizes the matched fraction over label
//! permutations via an exact assignment solve.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::numerics::optimal_assignment;

/// The six evaluation measures for one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsReport {
    pub nmi: f64,
    pub acc: f64,
    pub ari: f64,
    pub f_score: f64,
    pub precision: f64,
    pub recall: f64,
}

impl MetricsReport {
    /// Evaluates all six measures of `pred` against `truth`.
    pub fn compute(pred: &[usize], truth: &[usize]) -> Result<Self> {
        let (precision, recall, f_score) = pairwise_prf(pred, truth)?;
        Ok(MetricsReport {
            nmi: nmi(pred, truth)?,
            acc: acc(pred, truth)?,
            ari: ari(pred, truth)?,
            f_score,
            precision,
            recall,
        })
    }

    pub fn csv_header() -> &'static str {
        "nmi,acc,ari,f_score,precision,recall"
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
            self.nmi, self.acc, self.ari, self.f_score, self.precision, self.recall
        )
    }

    fn as_array(&self) -> [f64; 6] {
        [
            self.nmi,
            self.acc,
            self.ari,
            self.f_score,
            self.precision,
            self.recall,
        ]
    }
}

/// Per-metric mean and sample standard deviation over repeated trials.
#[derive(Debug, Clone)]
pub struct AggregateReport {
    pub mean: MetricsReport,
    pub std: MetricsReport,
    pub trials: usize,
}

/// Aggregates trial reports: sample mean and (n−1)-corrected standard
/// deviation per metric; a single report gets std 0.
pub fn aggregate(reports: &[MetricsReport]) -> Result<AggregateReport> {
    if reports.is_empty() {
        return Err(Error::EmptyInput("no metric reports to aggregate".into()));
    }
    let n = reports.len() as f64;
    let mut mean = [0.0f64; 6];
    for r in reports {
        for (m, v) in mean.iter_mut().zip(r.as_array()) {
            *m += v;
        }
    }
    for m in mean.iter_mut() {
        *m /= n;
    }
    let mut var = [0.0f64; 6];
    if reports.len() > 1 {
        for r in reports {
            for ((s, v), m) in var.iter_mut().zip(r.as_array()).zip(mean) {
                *s += (v - m) * (v - m);
            }
        }
        for s in var.iter_mut() {
            *s /= n - 1.0;
        }
    }
    let build = |a: [f64; 6]| MetricsReport {
        nmi: a[0],
        acc: a[1],
        ari: a[2],
        f_score: a[3],
        precision: a[4],
        recall: a[5],
    };
    Ok(AggregateReport {
        mean: build(mean),
        std: build(var.map(f64::sqrt)),
        trials: reports.len(),
    })
}

impl AggregateReport {
    /// One `mean(std)` cell, e.g. `0.886(0.016)`.
    fn cell(mean: f64, std: f64) -> String {
        format!("{mean:.3}({std:.3})")
    }

    /// Aligned text table with one row per labeled method.
    pub fn table(rows: &[(&str, &AggregateReport)]) -> String {
        let header = ["Method", "NMI", "ACC", "ARI", "F", "P", "Re"];
        let mut cells: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
        for (name, agg) in rows {
            let m = agg.mean.as_array();
            let s = agg.std.as_array();
            let mut row = vec![name.to_string()];
            row.extend((0..6).map(|i| Self::cell(m[i], s[i])));
            cells.push(row);
        }
        let widths: Vec<usize> = (0..header.len())
            .map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &cells {
            for (c, cell) in row.iter().enumerate() {
                if c > 0 {
                    out.push_str("  ");
                }
                out.push_str(&format!("{cell:<width$}", width = widths[c]));
            }
            // trailing spaces are trimmed per line
            while out.ends_with(' ') {
                out.pop();
            }
            out.push('\n');
        }
        out
    }
}

fn check_lengths(pred: &[usize], truth: &[usize], min: usize) -> Result<()> {
    if pred.len() != truth.len() {
        return Err(Error::LengthMismatch(format!(
            "pred has {} labels, truth has {}",
            pred.len(),
            truth.len()
        )));
    }
    if pred.len() < min {
        return Err(Error::LengthMismatch(format!(
            "need at least {min} samples, got {}",
            pred.len()
        )));
    }
    Ok(())
}

fn counts(labels: &[usize]) -> Vec<usize> {
    let k = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut c = vec![0usize; k];
    for &l in labels {
        c[l] += 1;
    }
    c
}

fn contingency(pred: &[usize], truth: &[usize]) -> DMatrix<f64> {
    let kp = pred.iter().copied().max().map_or(0, |m| m + 1);
    let kt = truth.iter().copied().max().map_or(0, |m| m + 1);
    let mut table = DMatrix::zeros(kp, kt);
    for (&p, &t) in pred.iter().zip(truth) {
        table[(p, t)] += 1.0;
    }
    table
}

fn entropy(counts: &[usize], n: f64) -> f64 {
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// Do two label vectors induce the same partition (ignoring label names)?
fn same_partition(a: &[usize], b: &[usize]) -> bool {
    fn canonical(l: &[usize]) -> Vec<usize> {
        let k = l.iter().copied().max().map_or(0, |m| m + 1);
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
    }
    canonical(a) == canonical(b)
}

/// Normalized mutual information with √(H·H) normalization.
///
/// When either labeling has zero entropy the ratio is 0/0; by convention
/// the result is 1 if the two partitions are identical and 0 otherwise.
pub fn nmi(pred: &[usize], truth: &[usize]) -> Result<f64> {
    check_lengths(pred, truth, 1)?;
    let n = pred.len() as f64;
    let h_pred = entropy(&counts(pred), n);
    let h_truth = entropy(&counts(truth), n);
    if h_pred <= 0.0 || h_truth <= 0.0 {
        return Ok(if same_partition(pred, truth) { 1.0 } else { 0.0 });
    }

    let table = contingency(pred, truth);
    let p_pred = counts(pred);
    let p_truth = counts(truth);
    let mut mi = 0.0;
    for i in 0..table.nrows() {
        for j in 0..table.ncols() {
            let c = table[(i, j)];
            if c > 0.0 {
                let p_joint = c / n;
                let pi = p_pred[i] as f64 / n;
                let pj = p_truth[j] as f64 / n;
                mi += p_joint * (p_joint / (pi * pj)).ln();
            }
        }
    }
    Ok((mi / (h_pred * h_truth).sqrt()).clamp(0.0, 1.0))
}

/// Clustering accuracy: the best fraction of correctly matched samples
/// over all one-to-one matchings of predicted to true cluster ids. The
/// contingency table is zero-padded square, then solved exactly.
pub fn acc(pred: &[usize], truth: &[usize]) -> Result<f64> {
    check_lengths(pred, truth, 1)?;
    let table = contingency(pred, truth);
    let k = table.nrows().max(table.ncols());
    let mut cost = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let overlap = if i < table.nrows() && j < table.ncols() {
                table[(i, j)]
            } else {
                0.0
            };
            cost[(i, j)] = -overlap;
        }
    }
    let perm = optimal_assignment(&cost)?;
    let matched: f64 = perm
        .iter()
        .enumerate()
        .map(|(i, &j)| -cost[(i, j)])
        .sum();
    Ok(matched / pred.len() as f64)
}

fn comb2(x: f64) -> f64 {
    x * (x - 1.0) / 2.0
}

/// Adjusted Rand index from pair counts. The degenerate case where the
/// expected index equals the maximum (e.g. both labelings constant or both
/// all-singleton) is defined as 1.
pub fn ari(pred: &[usize], truth: &[usize]) -> Result<f64> {
    check_lengths(pred, truth, 2)?;
    let table = contingency(pred, truth);
    let n = pred.len() as f64;

    let index: f64 = table.iter().map(|&c| comb2(c)).sum();
    let sum_rows: f64 = (0..table.nrows())
        .map(|i| comb2(table.row(i).sum()))
        .sum();
    let sum_cols: f64 = (0..table.ncols())
        .map(|j| comb2(table.column(j).sum()))
        .sum();

    let expected = sum_rows * sum_cols / comb2(n);
    let max_index = 0.5 * (sum_rows + sum_cols);
    let denom = max_index - expected;
    if denom.abs() < 1e-12 {
        return Ok(1.0);
    }
    Ok((index - expected) / denom)
}

/// Pairwise precision, recall, and F-score over all unordered sample
/// pairs. True positive: same cluster in both labelings. Zero denominators
/// yield 0.
pub fn pairwise_prf(pred: &[usize], truth: &[usize]) -> Result<(f64, f64, f64)> {
    check_lengths(pred, truth, 2)?;
    let n = pred.len();
    let mut tp = 0u64;
    let mut fp = 0u64;
    let mut fn_ = 0u64;
    for i in 0..n {
        for j in (i + 1)..n {
            let same_pred = pred[i] == pred[j];
            let same_truth = truth[i] == truth[j];
            match (same_pred, same_truth) {
                (true, true) => tp += 1,
                (true, false) => fp += 1,
                (false, true) => fn_ += 1,
                (false, false) => {}
            }
        }
    }
    let precision = if tp + fp > 0 {
        tp as f64 / (tp + fp) as f64
    } else {
        0.0
    };
    let recall = if tp + fn_ > 0 {
        tp as f64 / (tp + fn_) as f64
    } else {
        0.0
    };
    let f_score = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    Ok((precision, recall, f_score))
}
