//! Named hyperparameter presets.

use mvsc_core::solver::Hyperparams;
use mvsc_core::{Error, Result};

const AVAILABLE: &str = "orl, yale";

/// Grid-searched weights for the two face-image benchmarks.
pub fn preset(name: &str) -> Result<Hyperparams> {
    match name {
        "orl" => Ok(Hyperparams::new(0.002, 0.5, 0.1)),
        "yale" => Ok(Hyperparams::new(0.003, 0.7, 0.2)),
        other => Err(Error::UnknownPreset {
            name: other.to_string(),
            available: AVAILABLE.to_string(),
        }),
    }
}
