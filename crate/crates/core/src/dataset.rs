//! Multi-view dataset loading, validation, synthesis, and on-disk formats.
//!
//! A dataset is a set of feature matrices (one per view, features as rows,
//! samples as columns) over the same samples, optionally with ground-truth
//! cluster labels. On disk it is a small key/value manifest plus one
//! headerless numeric CSV per view:
//!
//! ```text
//! normalize = l2_columns
//! view.intensity.path = intensity.csv
//! view.gabor.path = gabor.csv
//! labels.path = labels.csv
//! ```
//!
//! Paths are resolved relative to the manifest's directory. Optional
//! `view.<name>.rows` / `view.<name>.cols` keys declare the expected shape;
//! when present they must match the file contents exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Per-sample normalization applied by the solver before fitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalize {
    /// Scale every sample column to unit ℓ2 norm (zero columns left as-is).
    L2Columns,
    /// Use the data as stored.
    None,
}

impl Normalize {
    pub fn as_str(self) -> &'static str {
        match self {
            Normalize::L2Columns => "l2_columns",
            Normalize::None => "none",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "l2_columns" => Ok(Normalize::L2Columns),
            "none" => Ok(Normalize::None),
            other => Err(Error::InvalidConfig(format!(
                "unknown normalize mode '{other}' (expected l2_columns | none)"
            ))),
        }
    }
}

/// V feature matrices over the same N samples, with optional labels.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiViewDataset {
    views: Vec<DMatrix<f64>>,
    names: Vec<String>,
    labels: Option<Vec<usize>>,
    normalize: Normalize,
}

impl MultiViewDataset {
    /// Validates shapes and label contiguity and assembles a dataset.
    pub fn new(
        views: Vec<DMatrix<f64>>,
        names: Vec<String>,
        labels: Option<Vec<usize>>,
        normalize: Normalize,
    ) -> Result<Self> {
        if views.is_empty() {
            return Err(Error::InvalidConfig("dataset has no views".into()));
        }
        if names.len() != views.len() {
            return Err(Error::InvalidConfig(format!(
                "{} view names for {} views",
                names.len(),
                views.len()
            )));
        }
        let n = views[0].ncols();
        if n < 2 {
            return Err(Error::InvalidConfig(format!(
                "dataset needs at least 2 samples, got {n}"
            )));
        }
        let mismatched: Vec<String> = names
            .iter()
            .zip(&views)
            .filter(|(_, v)| v.ncols() != n)
            .map(|(name, v)| format!("'{}' has N={}", name, v.ncols()))
            .collect();
        if !mismatched.is_empty() {
            return Err(Error::ShapeMismatch(format!(
                "views disagree on sample count: '{}' has N={}, but {}",
                names[0],
                n,
                mismatched.join(", ")
            )));
        }
        for (name, v) in names.iter().zip(&views) {
            if v.nrows() == 0 {
                return Err(Error::ShapeMismatch(format!(
                    "view '{name}' has zero feature rows"
                )));
            }
            if !v.iter().all(|x| x.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "view '{name}' contains non-finite values"
                )));
            }
        }
        if let Some(ref l) = labels {
            validate_labels(l, n)?;
        }
        Ok(MultiViewDataset {
            views,
            names,
            labels,
            normalize,
        })
    }

    pub fn n_views(&self) -> usize {
        self.views.len()
    }

    pub fn n_samples(&self) -> usize {
        self.views[0].ncols()
    }

    pub fn views(&self) -> &[DMatrix<f64>] {
        &self.views
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    pub fn normalize(&self) -> Normalize {
        self.normalize
    }

    /// Number of ground-truth clusters, if labels are present.
    pub fn n_clusters(&self) -> Option<usize> {
        self.labels
            .as_ref()
            .map(|l| l.iter().copied().max().map_or(0, |m| m + 1))
    }
}

fn validate_labels(labels: &[usize], n: usize) -> Result<()> {
    if labels.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "labels length {} does not match sample count {}",
            labels.len(),
            n
        )));
    }
    let k = labels.iter().copied().max().map_or(0, |m| m + 1);
    if k < 2 {
        return Err(Error::InvalidConfig(
            "labels must contain at least 2 clusters".into(),
        ));
    }
    let mut seen = vec![false; k];
    for &l in labels {
        seen[l] = true;
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(Error::InvalidConfig(format!(
            "labels are not contiguous: id {missing} unused but max id is {}",
            k - 1
        )));
    }
    Ok(())
}

/// Scales every column to unit ℓ2 norm. All-zero columns are left as zero;
/// their indices are returned so callers can warn or refuse.
pub fn normalize_columns(x: &DMatrix<f64>) -> (DMatrix<f64>, Vec<usize>) {
    let mut out = x.clone();
    let mut zero_cols = Vec::new();
    for (j, mut col) in out.column_iter_mut().enumerate() {
        let norm = col.norm();
        if norm > 0.0 {
            col /= norm;
        } else {
            zero_cols.push(j);
        }
    }
    (out, zero_cols)
}

// ---------------------------------------------------------------------------
// manifest + CSV I/O

/// Loads a dataset from a manifest file, validating shapes strictly:
/// views that disagree on sample count are an error, never truncated.
pub fn load(manifest_path: &Path) -> Result<MultiViewDataset> {
    let text = std::fs::read_to_string(manifest_path)
        .map_err(|e| Error::io(manifest_path.display().to_string(), e))?;
    let base = manifest_path.parent().unwrap_or_else(|| Path::new("."));
    let manifest = parse_manifest(&text, manifest_path)?;

    let mut views = Vec::new();
    let mut names = Vec::new();
    for decl in &manifest.views {
        let path = base.join(&decl.path);
        if !path.is_file() {
            return Err(Error::MissingFile {
                view: decl.name.clone(),
                path: path.display().to_string(),
            });
        }
        let m = read_matrix_csv(&path)?;
        if let Some(rows) = decl.rows {
            if m.nrows() != rows {
                return Err(Error::ShapeMismatch(format!(
                    "view '{}' declares {} rows but {} has {}",
                    decl.name,
                    rows,
                    path.display(),
                    m.nrows()
                )));
            }
        }
        if let Some(cols) = decl.cols {
            if m.ncols() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "view '{}' declares {} columns but {} has {}",
                    decl.name,
                    cols,
                    path.display(),
                    m.ncols()
                )));
            }
        }
        views.push(m);
        names.push(decl.name.clone());
    }

    let labels = match &manifest.labels_path {
        Some(rel) => {
            let path = base.join(rel);
            if !path.is_file() {
                return Err(Error::MissingFile {
                    view: "labels".into(),
                    path: path.display().to_string(),
                });
            }
            Some(read_labels_csv(&path)?)
        }
        None => None,
    };

    MultiViewDataset::new(views, names, labels, manifest.normalize)
}

/// Writes `manifest.txt` plus one CSV per view (and `labels.csv` when
/// present) into `dir`. Returns the manifest path. Values round-trip
/// exactly through [`load`].
pub fn save(ds: &MultiViewDataset, dir: &Path) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir.display().to_string(), e))?;
    let mut manifest = String::new();
    let _ = writeln!(manifest, "normalize = {}", ds.normalize().as_str());
    for (name, view) in ds.names().iter().zip(ds.views()) {
        let file = format!("{name}.csv");
        write_matrix_csv(&dir.join(&file), view)?;
        let _ = writeln!(manifest, "view.{name}.path = {file}");
        let _ = writeln!(manifest, "view.{name}.rows = {}", view.nrows());
        let _ = writeln!(manifest, "view.{name}.cols = {}", view.ncols());
    }
    if let Some(labels) = ds.labels() {
        let mut out = String::new();
        for l in labels {
            let _ = writeln!(out, "{l}");
        }
        let path = dir.join("labels.csv");
        std::fs::write(&path, out).map_err(|e| Error::io(path.display().to_string(), e))?;
        let _ = writeln!(manifest, "labels.path = labels.csv");
    }
    let path = dir.join("manifest.txt");
    std::fs::write(&path, manifest).map_err(|e| Error::io(path.display().to_string(), e))?;
    Ok(path)
}

struct ViewDecl {
    name: String,
    path: String,
    rows: Option<usize>,
    cols: Option<usize>,
}

struct Manifest {
    views: Vec<ViewDecl>,
    labels_path: Option<String>,
    normalize: Normalize,
}

fn parse_manifest(text: &str, origin: &Path) -> Result<Manifest> {
    let mut order: Vec<String> = Vec::new();
    let mut decls: BTreeMap<String, ViewDecl> = BTreeMap::new();
    let mut labels_path = None;
    let mut normalize = Normalize::L2Columns;

    let err = |line: usize, detail: String| Error::ParseError {
        path: origin.display().to_string(),
        line,
        detail,
    };

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(lineno, format!("expected 'key = value', got '{line}'")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "normalize" => normalize = Normalize::parse(value)?,
            "labels.path" => labels_path = Some(value.to_string()),
            _ => {
                let rest = key
                    .strip_prefix("view.")
                    .ok_or_else(|| err(lineno, format!("unknown key '{key}'")))?;
                let (name, field) = rest
                    .rsplit_once('.')
                    .ok_or_else(|| err(lineno, format!("malformed view key '{key}'")))?;
                if !decls.contains_key(name) {
                    order.push(name.to_string());
                    decls.insert(
                        name.to_string(),
                        ViewDecl {
                            name: name.to_string(),
                            path: String::new(),
                            rows: None,
                            cols: None,
                        },
                    );
                }
                let decl = decls.get_mut(name).expect("inserted above");
                match field {
                    "path" => decl.path = value.to_string(),
                    "rows" => {
                        decl.rows = Some(value.parse().map_err(|_| {
                            err(lineno, format!("'{value}' is not a valid row count"))
                        })?)
                    }
                    "cols" => {
                        decl.cols = Some(value.parse().map_err(|_| {
                            err(lineno, format!("'{value}' is not a valid column count"))
                        })?)
                    }
                    other => return Err(err(lineno, format!("unknown view field '{other}'"))),
                }
            }
        }
    }

    if order.is_empty() {
        return Err(err(0, "manifest declares no views".into()));
    }
    let mut views = Vec::with_capacity(order.len());
    for name in order {
        let decl = decls.remove(&name).expect("collected above");
        if decl.path.is_empty() {
            return Err(err(0, format!("view '{name}' has no path")));
        }
        views.push(decl);
    }
    Ok(Manifest {
        views,
        labels_path,
        normalize,
    })
}

/// Reads a headerless comma-separated numeric matrix.
pub fn read_matrix_csv(path: &Path) -> Result<DMatrix<f64>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for field in line.split(',') {
            let v: f64 = field.trim().parse().map_err(|_| Error::ParseError {
                path: path.display().to_string(),
                line: idx + 1,
                detail: format!("'{}' is not a number", field.trim()),
            })?;
            row.push(v);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::ParseError {
                    path: path.display().to_string(),
                    line: idx + 1,
                    detail: format!("row has {} fields, expected {}", row.len(), first.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::ParseError {
            path: path.display().to_string(),
            line: 0,
            detail: "file is empty".into(),
        });
    }
    let (nr, nc) = (rows.len(), rows[0].len());
    Ok(DMatrix::from_fn(nr, nc, |i, j| rows[i][j]))
}

/// Writes a headerless comma-separated numeric matrix with full-precision
/// entries (values survive a write/read round trip bit-exactly).
pub fn write_matrix_csv(path: &Path, m: &DMatrix<f64>) -> Result<()> {
    let mut out = String::new();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if j > 0 {
                out.push(',');
            }
            // shortest round-trip representation; parses back bit-exact
            let _ = write!(out, "{}", m[(i, j)]);
        }
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|e| Error::io(path.display().to_string(), e))
}

/// Reads a single-column CSV of cluster ids.
pub fn read_labels_csv(path: &Path) -> Result<Vec<usize>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    let mut labels = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let v: usize = line.parse().map_err(|_| Error::ParseError {
            path: path.display().to_string(),
            line: idx + 1,
            detail: format!("'{line}' is not a cluster id"),
        })?;
        labels.push(v);
    }
    Ok(labels)
}

// ---------------------------------------------------------------------------
// synthesis

/// Parameters for the union-of-subspaces generator.
#[derive(Debug, Clone)]
pub struct SynthSpec {
    pub k: usize,
    pub per_cluster: usize,
    /// Ambient dimension of each view.
    pub ambient_dims: Vec<usize>,
    /// Dimension of every cluster's subspace.
    pub subspace_dim: usize,
    /// Isotropic Gaussian noise scale.
    pub noise_sigma: f64,
    pub seed: u64,
}

/// Generates a multi-view dataset where cluster `c`'s samples lie in a
/// random `subspace_dim`-dimensional linear subspace of each view's ambient
/// space (plus optional Gaussian noise). Cluster identity is shared across
/// views: the same column belongs to the same cluster everywhere. Samples
/// are laid out cluster-major, so ground-truth labels are `0,0,…,1,1,…`.
pub fn synthesize(spec: &SynthSpec) -> Result<MultiViewDataset> {
    if spec.k < 2 {
        return Err(Error::InvalidConfig(format!(
            "synthesis needs k >= 2 clusters, got {}",
            spec.k
        )));
    }
    if spec.per_cluster < 1 {
        return Err(Error::InvalidConfig("per_cluster must be >= 1".into()));
    }
    if spec.ambient_dims.is_empty() {
        return Err(Error::InvalidConfig("no ambient dimensions given".into()));
    }
    let min_dim = *spec.ambient_dims.iter().min().expect("non-empty");
    if spec.subspace_dim == 0 || spec.subspace_dim >= min_dim {
        return Err(Error::InvalidConfig(format!(
            "subspace_dim must satisfy 1 <= {} < min ambient dim {}",
            spec.subspace_dim, min_dim
        )));
    }
    if !spec.noise_sigma.is_finite() || spec.noise_sigma < 0.0 {
        return Err(Error::InvalidConfig(format!(
            "noise_sigma must be finite and >= 0, got {}",
            spec.noise_sigma
        )));
    }

    let n = spec.k * spec.per_cluster;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let normal = StandardNormal;

    let mut views = Vec::with_capacity(spec.ambient_dims.len());
    let mut names = Vec::with_capacity(spec.ambient_dims.len());
    for (v, &dim) in spec.ambient_dims.iter().enumerate() {
        let mut x = DMatrix::<f64>::zeros(dim, n);
        for c in 0..spec.k {
            // orthonormal basis of a random subspace
            let g: DMatrix<f64> =
                DMatrix::from_fn(dim, spec.subspace_dim, |_, _| normal.sample(&mut rng));
            let basis = g.qr().q();
            let coeffs: DMatrix<f64> =
                DMatrix::from_fn(spec.subspace_dim, spec.per_cluster, |_, _| {
                    normal.sample(&mut rng)
                });
            let mut block = basis * coeffs;
            if spec.noise_sigma > 0.0 {
                for e in block.iter_mut() {
                    let z: f64 = normal.sample(&mut rng);
                    *e += spec.noise_sigma * z;
                }
            }
            x.view_mut((0, c * spec.per_cluster), (dim, spec.per_cluster))
                .copy_from(&block);
        }
        views.push(x);
        names.push(format!("view{v}"));
    }

    let labels: Vec<usize> = (0..n).map(|i| i / spec.per_cluster).collect();
    MultiViewDataset::new(views, names, Some(labels), Normalize::L2Columns)
}
