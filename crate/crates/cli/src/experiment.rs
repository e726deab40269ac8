//! Executes resolved experiment configurations and writes artifacts.

use std::fmt::Write as _;
use std::path::Path;

use mvsc_core::dataset::{self, MultiViewDataset};
use mvsc_core::metrics::{aggregate, AggregateReport, MetricsReport};
use mvsc_core::pipeline::{run_trials, TrialRun};
use mvsc_core::{Error, Result};

use crate::config::{DatasetSource, ExperimentConfig, GridConfig, MetricKey};

/// Exit status contribution of one error (0 is success).
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::NumericalFailure(_) | Error::DegenerateSample { .. } => 3,
        Error::InvalidConfig(_) | Error::UnknownPreset { .. } => 1,
        _ => 2,
    }
}

fn load_dataset(cfg: &ExperimentConfig) -> Result<MultiViewDataset> {
    match &cfg.source {
        DatasetSource::Manifest(path) => dataset::load(path),
        DatasetSource::Synthetic(spec) => dataset::synthesize(spec),
    }
}

fn resolve_k(cfg: &ExperimentConfig, ds: &MultiViewDataset) -> Result<usize> {
    cfg.k.or_else(|| ds.n_clusters()).ok_or_else(|| {
        Error::InvalidConfig("cluster count unknown: pass --k or provide labels".into())
    })
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })
}

fn write_labels(path: &Path, labels: &[usize]) -> Result<()> {
    let mut out = String::new();
    for l in labels {
        let _ = writeln!(out, "{l}");
    }
    write_text(path, &out)
}

fn dump_trial(cfg: &ExperimentConfig, ds: &MultiViewDataset, run: &TrialRun) -> Result<()> {
    let outcome = match &run.result {
        Ok(o) => o,
        Err(_) => return Ok(()),
    };
    let t = run.trial;
    write_labels(&cfg.out.join(format!("labels_{t}.csv")), &outcome.labels)?;
    if cfg.dump_trace {
        write_text(
            &cfg.out.join(format!("trace_{t}.csv")),
            &outcome.fit.trace.to_csv(),
        )?;
    }
    if cfg.dump_affinity {
        dataset::write_matrix_csv(
            &cfg.out.join(format!("affinity_{t}.csv")),
            outcome.affinity.matrix(),
        )?;
    }
    if cfg.dump_representations {
        for (name, view) in ds.names().iter().zip(&outcome.fit.state.views) {
            dataset::write_matrix_csv(
                &cfg.out.join(format!("Z_{name}_{t}.csv")),
                &view.representation,
            )?;
        }
    }
    Ok(())
}

fn results_csv(runs: &[TrialRun], truth: Option<&[usize]>) -> Result<(String, Vec<MetricsReport>)> {
    let mut csv = format!("trial,{}\n", MetricsReport::csv_header());
    let mut reports = Vec::new();
    if let Some(truth) = truth {
        for run in runs {
            if let Ok(outcome) = &run.result {
                let report = MetricsReport::compute(&outcome.labels, truth)?;
                let _ = writeln!(csv, "{},{}", run.trial, report.to_csv_row());
                reports.push(report);
            }
        }
    }
    Ok((csv, reports))
}

/// Runs the repeated-trials protocol and writes `results.csv`,
/// `summary.txt`, and any requested dumps. Failed trials are reported and
/// skipped; the exit code reflects the most severe failure.
pub fn execute_run(cfg: &ExperimentConfig) -> Result<i32> {
    let ds = load_dataset(cfg)?;
    let k = resolve_k(cfg, &ds)?;
    std::fs::create_dir_all(&cfg.out).map_err(|e| Error::Io {
        path: cfg.out.display().to_string(),
        source: e,
    })?;

    let runs = run_trials(&ds, k, &cfg.hyper, cfg.trials);

    let mut exit = 0i32;
    for run in &runs {
        if let Err(e) = &run.result {
            eprintln!("trial {} failed: {e}", run.trial);
            exit = exit.max(error_exit_code(e));
        }
        dump_trial(cfg, &ds, run)?;
    }

    let (csv, reports) = results_csv(&runs, ds.labels())?;
    write_text(&cfg.out.join("results.csv"), &csv)?;

    let mut summary = String::new();
    if reports.is_empty() {
        if ds.labels().is_none() {
            let _ = writeln!(
                summary,
                "no ground-truth labels; metrics unavailable (predicted labels were written)"
            );
        } else {
            let _ = writeln!(summary, "all {} trials failed", cfg.trials);
        }
    } else {
        let agg = aggregate(&reports)?;
        summary.push_str(&AggregateReport::table(&[("mvsc", &agg)]));
    }
    let converged = runs
        .iter()
        .filter(|r| matches!(&r.result, Ok(o) if o.fit.trace.converged))
        .count();
    let _ = writeln!(summary, "trials = {}", cfg.trials);
    let _ = writeln!(summary, "converged = {converged}/{}", cfg.trials);
    write_text(&cfg.out.join("summary.txt"), &summary)?;
    print!("{summary}");

    Ok(exit)
}

fn metric_of(report: &MetricsReport, key: MetricKey) -> f64 {
    match key {
        MetricKey::Nmi => report.nmi,
        MetricKey::Acc => report.acc,
        MetricKey::Ari => report.ari,
        MetricKey::F => report.f_score,
        MetricKey::Precision => report.precision,
        MetricKey::Recall => report.recall,
    }
}

/// Evaluates the Cartesian product of the weight grids, writes
/// `grid_results.csv`, and reports the best cell by the selected metric
/// (ties keep the earlier cell in grid order).
pub fn execute_grid(cfg: &ExperimentConfig, grid: &GridConfig) -> Result<i32> {
    let ds = load_dataset(cfg)?;
    if ds.labels().is_none() {
        return Err(Error::MissingLabels(
            "grid search selects by a metric, which needs ground-truth labels".into(),
        ));
    }
    let truth = ds.labels().expect("checked above").to_vec();
    let k = resolve_k(cfg, &ds)?;
    std::fs::create_dir_all(&cfg.out).map_err(|e| Error::Io {
        path: cfg.out.display().to_string(),
        source: e,
    })?;

    let mut csv = String::from(
        "lambda1,lambda2,lambda3,nmi_mean,nmi_std,acc_mean,acc_std,ari_mean,ari_std,\
         f_mean,f_std,precision_mean,precision_std,recall_mean,recall_std\n",
    );
    let mut exit = 0i32;
    let mut best: Option<(f64, (f64, f64, f64), AggregateReport)> = None;

    for &l1 in &grid.lambda1 {
        for &l2 in &grid.lambda2 {
            for &l3 in &grid.lambda3 {
                let mut hyper = cfg.hyper.clone();
                hyper.lambda1 = l1;
                hyper.lambda2 = l2;
                hyper.lambda3 = l3;
                let runs = run_trials(&ds, k, &hyper, cfg.trials);
                let mut reports = Vec::new();
                for run in &runs {
                    match &run.result {
                        Ok(o) => reports.push(MetricsReport::compute(&o.labels, &truth)?),
                        Err(e) => {
                            eprintln!(
                                "grid cell ({l1}, {l2}, {l3}) trial {} failed: {e}",
                                run.trial
                            );
                            exit = exit.max(error_exit_code(e));
                        }
                    }
                }
                if reports.is_empty() {
                    continue;
                }
                let agg = aggregate(&reports)?;
                let m = &agg.mean;
                let s = &agg.std;
                let _ = writeln!(
                    csv,
                    "{l1},{l2},{l3},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
                    m.nmi, s.nmi, m.acc, s.acc, m.ari, s.ari, m.f_score, s.f_score,
                    m.precision, s.precision, m.recall, s.recall
                );
                let score = metric_of(m, grid.metric);
                let better = match &best {
                    None => true,
                    Some((b, _, _)) => score > *b, // strict: first cell wins ties
                };
                if better {
                    best = Some((score, (l1, l2, l3), agg));
                }
            }
        }
    }

    write_text(&cfg.out.join("grid_results.csv"), &csv)?;
    match best {
        Some((score, (l1, l2, l3), agg)) => {
            let mut report = String::new();
            let _ = writeln!(
                report,
                "best by {}: lambda1={l1} lambda2={l2} lambda3={l3} ({}={score:.6})",
                grid.metric.name(),
                grid.metric.name()
            );
            report.push_str(&AggregateReport::table(&[("best", &agg)]));
            write_text(&cfg.out.join("grid_best.txt"), &report)?;
            print!("{report}");
            Ok(exit)
        }
        None => Err(Error::NumericalFailure(
            "every grid cell failed all trials".into(),
        )),
    }
}
