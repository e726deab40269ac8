//! Experiment configuration: a flat key/value file with one section per
//! module, every key overridable from the command line (flags win).
//!
//! ```text
//! [dataset]
//! manifest = data/manifest.txt
//! # or a synthetic source:
//! # synth.k = 4
//! # synth.per_cluster = 40
//! # synth.dims = 50,60,40
//! # synth.subspace_dim = 4
//! # synth.noise = 0.01
//!
//! [solver]
//! preset = orl
//! # lambda1 = 0.002
//! # max_iters = 100
//! # rel_tol = 1e-6
//!
//! [experiment]
//! k = 4
//! trials = 10
//! seed = 0
//! out = results/orl
//! dump_trace = true
//!
//! [grid]
//! lambda1 = 0.001,0.002,0.004
//! metric = acc
//! ```

use std::path::{Path, PathBuf};

use mvsc_core::dataset::SynthSpec;
use mvsc_core::solver::Hyperparams;
use mvsc_core::{Error, Result};

use crate::args::{GridArgs, RunArgs};
use crate::presets::preset;

#[derive(Debug, Clone)]
pub enum DatasetSource {
    Manifest(PathBuf),
    Synthetic(SynthSpec),
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub source: DatasetSource,
    /// Cluster count; `None` defers to the dataset's ground-truth count.
    pub k: Option<usize>,
    pub hyper: Hyperparams,
    pub trials: usize,
    pub out: PathBuf,
    pub dump_trace: bool,
    pub dump_affinity: bool,
    pub dump_representations: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKey {
    Nmi,
    Acc,
    Ari,
    F,
    Precision,
    Recall,
}

impl MetricKey {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "nmi" => Ok(MetricKey::Nmi),
            "acc" => Ok(MetricKey::Acc),
            "ari" => Ok(MetricKey::Ari),
            "f" | "f_score" => Ok(MetricKey::F),
            "precision" => Ok(MetricKey::Precision),
            "recall" => Ok(MetricKey::Recall),
            other => Err(Error::InvalidConfig(format!(
                "unknown metric '{other}' (expected nmi|acc|ari|f|precision|recall)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MetricKey::Nmi => "nmi",
            MetricKey::Acc => "acc",
            MetricKey::Ari => "ari",
            MetricKey::F => "f_score",
            MetricKey::Precision => "precision",
            MetricKey::Recall => "recall",
        }
    }
}

#[derive(Debug, Clone)]
pub struct GridConfig {
    pub lambda1: Vec<f64>,
    pub lambda2: Vec<f64>,
    pub lambda3: Vec<f64>,
    pub metric: MetricKey,
}

/// Raw option bag mirroring the file keys; flags merge on top.
#[derive(Debug, Default, Clone)]
struct FileConfig {
    manifest: Option<PathBuf>,
    synth_k: Option<usize>,
    synth_per_cluster: Option<usize>,
    synth_dims: Option<Vec<usize>>,
    synth_subspace_dim: Option<usize>,
    synth_noise: Option<f64>,
    synth_seed: Option<u64>,
    preset: Option<String>,
    lambda1: Option<f64>,
    lambda2: Option<f64>,
    lambda3: Option<f64>,
    max_iters: Option<usize>,
    rel_tol: Option<f64>,
    k: Option<usize>,
    trials: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    dump_trace: Option<bool>,
    dump_affinity: Option<bool>,
    dump_representations: Option<bool>,
    grid_lambda1: Option<Vec<f64>>,
    grid_lambda2: Option<Vec<f64>>,
    grid_lambda3: Option<Vec<f64>>,
    metric: Option<MetricKey>,
}

pub fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    let items: std::result::Result<Vec<T>, _> =
        s.split(',').map(|p| p.trim().parse::<T>()).collect();
    match items {
        Ok(v) if !v.is_empty() => Ok(v),
        _ => Err(Error::InvalidConfig(format!(
            "cannot parse {what} list from '{s}'"
        ))),
    }
}

fn parse_file(path: &Path) -> Result<FileConfig> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            source: e,
        })?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let mut cfg = FileConfig::default();
    let mut section = String::new();

    let err = |line: usize, detail: String| Error::ParseError {
        path: path.display().to_string(),
        line,
        detail,
    };

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            section = name.trim().to_string();
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(lineno, format!("expected 'key = value', got '{line}'")))?;
        let (key, value) = (key.trim(), value.trim());
        let parse_num = |what: &str| -> Result<f64> {
            value
                .parse()
                .map_err(|_| err(lineno, format!("'{value}' is not a valid {what}")))
        };
        let parse_count = |what: &str| -> Result<usize> {
            value
                .parse()
                .map_err(|_| err(lineno, format!("'{value}' is not a valid {what}")))
        };
        let parse_bool = || -> Result<bool> {
            match value {
                "true" | "1" | "yes" => Ok(true),
                "false" | "0" | "no" => Ok(false),
                _ => Err(err(lineno, format!("'{value}' is not a boolean"))),
            }
        };
        match (section.as_str(), key) {
            ("dataset", "manifest") => cfg.manifest = Some(base.join(value)),
            ("dataset", "synth.k") => cfg.synth_k = Some(parse_count("cluster count")?),
            ("dataset", "synth.per_cluster") => {
                cfg.synth_per_cluster = Some(parse_count("per-cluster count")?)
            }
            ("dataset", "synth.dims") => {
                cfg.synth_dims = Some(parse_list(value, "ambient dims")?)
            }
            ("dataset", "synth.subspace_dim") => {
                cfg.synth_subspace_dim = Some(parse_count("subspace dim")?)
            }
            ("dataset", "synth.noise") => cfg.synth_noise = Some(parse_num("noise level")?),
            ("dataset", "synth.seed") => {
                cfg.synth_seed = Some(parse_count("seed")? as u64)
            }
            ("solver", "preset") => cfg.preset = Some(value.to_string()),
            ("solver", "lambda1") => cfg.lambda1 = Some(parse_num("weight")?),
            ("solver", "lambda2") => cfg.lambda2 = Some(parse_num("weight")?),
            ("solver", "lambda3") => cfg.lambda3 = Some(parse_num("weight")?),
            ("solver", "max_iters") => cfg.max_iters = Some(parse_count("iteration count")?),
            ("solver", "rel_tol") => cfg.rel_tol = Some(parse_num("tolerance")?),
            ("experiment", "k") => cfg.k = Some(parse_count("cluster count")?),
            ("experiment", "trials") => cfg.trials = Some(parse_count("trial count")?),
            ("experiment", "seed") => cfg.seed = Some(parse_count("seed")? as u64),
            ("experiment", "out") => cfg.out = Some(base.join(value)),
            ("experiment", "dump_trace") => cfg.dump_trace = Some(parse_bool()?),
            ("experiment", "dump_affinity") => cfg.dump_affinity = Some(parse_bool()?),
            ("experiment", "dump_representations") => {
                cfg.dump_representations = Some(parse_bool()?)
            }
            ("grid", "lambda1") => cfg.grid_lambda1 = Some(parse_list(value, "lambda1 grid")?),
            ("grid", "lambda2") => cfg.grid_lambda2 = Some(parse_list(value, "lambda2 grid")?),
            ("grid", "lambda3") => cfg.grid_lambda3 = Some(parse_list(value, "lambda3 grid")?),
            ("grid", "metric") => cfg.metric = Some(MetricKey::parse(value)?),
            (sec, key) => {
                return Err(err(
                    lineno,
                    format!("unknown key '{key}' in section '[{sec}]'"),
                ))
            }
        }
    }
    Ok(cfg)
}

/// Resolves the effective configuration: file values first, then flags on
/// top, then defaults.
pub fn resolve(args: &RunArgs) -> Result<ExperimentConfig> {
    let file = match &args.config {
        Some(path) => parse_file(path)?,
        None => FileConfig::default(),
    };

    // hyperparameters: preset < explicit weights, file < flags
    let preset_name = args.preset.clone().or(file.preset.clone());
    let mut hyper = match &preset_name {
        Some(name) => preset(name)?,
        None => Hyperparams::new(f64::NAN, f64::NAN, f64::NAN),
    };
    for (slot, file_v, flag_v) in [
        (&mut hyper.lambda1, file.lambda1, args.lambda1),
        (&mut hyper.lambda2, file.lambda2, args.lambda2),
        (&mut hyper.lambda3, file.lambda3, args.lambda3),
    ] {
        if let Some(v) = flag_v.or(file_v) {
            *slot = v;
        }
    }
    if !(hyper.lambda1.is_finite() && hyper.lambda2.is_finite() && hyper.lambda3.is_finite()) {
        return Err(Error::InvalidConfig(
            "no weights given: pass --preset or all of --lambda1/--lambda2/--lambda3 \
             (or set them in the config file)"
                .into(),
        ));
    }
    if let Some(v) = args.max_iters.or(file.max_iters) {
        hyper.max_iters = v;
    }
    if let Some(v) = args.rel_tol.or(file.rel_tol) {
        hyper.rel_tol = v;
    }
    let seed = args.seed.or(file.seed).unwrap_or(0);
    hyper.seed = seed;

    // dataset source: a manifest beats a synthetic spec if both appear
    let manifest = args.manifest.clone().or(file.manifest);
    let synth_k = args.synth_k.or(file.synth_k);
    let source = match (manifest, synth_k) {
        (Some(path), None) => DatasetSource::Manifest(path),
        (None, Some(k)) => {
            let dims = match &args.synth_dims {
                Some(s) => parse_list(s, "ambient dims")?,
                None => file.synth_dims.clone().ok_or_else(|| {
                    Error::InvalidConfig("synthetic source needs --synth-dims".into())
                })?,
            };
            DatasetSource::Synthetic(SynthSpec {
                k,
                per_cluster: args.synth_per_cluster.or(file.synth_per_cluster).ok_or_else(
                    || Error::InvalidConfig("synthetic source needs --synth-per-cluster".into()),
                )?,
                ambient_dims: dims,
                subspace_dim: args
                    .synth_subspace_dim
                    .or(file.synth_subspace_dim)
                    .ok_or_else(|| {
                        Error::InvalidConfig("synthetic source needs --synth-subspace-dim".into())
                    })?,
                noise_sigma: args.synth_noise.or(file.synth_noise).unwrap_or(0.0),
                seed: args.synth_seed.or(file.synth_seed).unwrap_or(seed),
            })
        }
        (Some(_), Some(_)) => {
            return Err(Error::InvalidConfig(
                "give either a manifest or a synthetic spec, not both".into(),
            ))
        }
        (None, None) => {
            return Err(Error::InvalidConfig(
                "no dataset: pass --manifest or a synthetic spec (--synth-k …)".into(),
            ))
        }
    };

    let out = args
        .out
        .clone()
        .or(file.out)
        .or_else(|| std::env::var_os("MVSC_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("mvsc-out"));

    Ok(ExperimentConfig {
        source,
        k: args.k.or(file.k),
        hyper,
        trials: args.trials.or(file.trials).unwrap_or(1).max(1),
        out,
        dump_trace: args.dump_trace || file.dump_trace.unwrap_or(false),
        dump_affinity: args.dump_affinity || file.dump_affinity.unwrap_or(false),
        dump_representations: args.dump_representations
            || file.dump_representations.unwrap_or(false),
    })
}

/// Resolves the grid on top of a run configuration. Axes without an
/// explicit grid get the single resolved weight, so a 1×1×1 grid equals a
/// plain run.
pub fn resolve_grid(args: &GridArgs) -> Result<(ExperimentConfig, GridConfig)> {
    let cfg = resolve(&args.run)?;
    let file = match &args.run.config {
        Some(path) => parse_file(path)?,
        None => FileConfig::default(),
    };
    let axis = |flag: &Option<String>, file_v: &Option<Vec<f64>>, fallback: f64, what: &str| {
        match flag {
            Some(s) => parse_list(s, what),
            None => Ok(file_v.clone().unwrap_or_else(|| vec![fallback])),
        }
    };
    let grid = GridConfig {
        lambda1: axis(
            &args.grid_lambda1,
            &file.grid_lambda1,
            cfg.hyper.lambda1,
            "lambda1 grid",
        )?,
        lambda2: axis(
            &args.grid_lambda2,
            &file.grid_lambda2,
            cfg.hyper.lambda2,
            "lambda2 grid",
        )?,
        lambda3: axis(
            &args.grid_lambda3,
            &file.grid_lambda3,
            cfg.hyper.lambda3,
            "lambda3 grid",
        )?,
        metric: match &args.metric {
            Some(s) => MetricKey::parse(s)?,
            None => file.metric.unwrap_or(MetricKey::Acc),
        },
    };
    Ok((cfg, grid))
}
