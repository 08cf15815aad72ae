//! Run settings: command-line flags over an optional TOML file over defaults.

use std::path::Path;

use chabauty_core::metric::MetricConfig;
use serde::Deserialize;

use crate::error::{CliError, Result};
use crate::num::parse_f64;

/// Keys accepted in the `--config` file. All are optional.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    /// Truncation radius of the direct lattice sums.
    pub truncation_radius: Option<f64>,
    pub radius: Option<f64>,
    pub spacing: Option<f64>,
    /// Acceptance threshold of convergence tests.
    pub eps: Option<f64>,
    pub seed: Option<u64>,
    pub budget: Option<usize>,
    pub count: Option<usize>,
    /// `"R:eps,R:eps,..."`.
    pub schedule: Option<String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::schema(format!("config {}: {e}", path.display())))
    }

    /// Values of `self` where present, otherwise those of `base`.
    pub fn over(self, base: ConfigFile) -> ConfigFile {
        ConfigFile {
            truncation_radius: self.truncation_radius.or(base.truncation_radius),
            radius: self.radius.or(base.radius),
            spacing: self.spacing.or(base.spacing),
            eps: self.eps.or(base.eps),
            seed: self.seed.or(base.seed),
            budget: self.budget.or(base.budget),
            count: self.count.or(base.count),
            schedule: self.schedule.or(base.schedule),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub truncation_radius: f64,
    pub radius: f64,
    pub spacing: f64,
    pub eps: f64,
    pub seed: u64,
    pub budget: usize,
    /// Row count of emitted datasets; each dataset has its own default.
    pub count: Option<usize>,
    pub schedule: Option<Vec<MetricConfig>>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            truncation_radius: 100.0,
            radius: 3.0,
            spacing: 0.05,
            eps: 0.05,
            seed: 0,
            budget: 10_000,
            count: None,
            schedule: None,
        }
    }
}

impl Settings {
    pub fn resolve(flags: ConfigFile, file: Option<&Path>) -> Result<Settings> {
        let file = match file {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let c = flags.over(file);
        let d = Settings::default();
        let s = Settings {
            truncation_radius: c.truncation_radius.unwrap_or(d.truncation_radius),
            radius: c.radius.unwrap_or(d.radius),
            spacing: c.spacing.unwrap_or(d.spacing),
            eps: c.eps.unwrap_or(d.eps),
            seed: c.seed.unwrap_or(d.seed),
            budget: c.budget.unwrap_or(d.budget),
            count: c.count,
            schedule: None,
        };
        s.metric()?;
        if !(s.truncation_radius > 0.0) {
            return Err(CliError::schema("truncation_radius must be positive"));
        }
        let schedule = c.schedule.as_deref().map(|t| parse_schedule(t, s.spacing)).transpose()?;
        Ok(Settings { schedule, ..s })
    }

    pub fn metric(&self) -> Result<MetricConfig> {
        MetricConfig::new(self.radius, self.spacing, self.eps).map_err(|e| CliError::schema(e.to_string()))
    }

    /// The `--schedule`, or the single configuration of `radius` and `eps`.
    pub fn schedule(&self) -> Result<Vec<MetricConfig>> {
        match &self.schedule {
            Some(s) => Ok(s.clone()),
            None => Ok(vec![self.metric()?]),
        }
    }
}

pub fn parse_schedule(text: &str, spacing: f64) -> Result<Vec<MetricConfig>> {
    let bad = || CliError::schema(format!("schedule must look like \"R:eps,R:eps\", got {text:?}"));
    let mut out = Vec::new();
    for part in text.split(',') {
        let (r, eps) = part.trim().split_once(':').ok_or_else(bad)?;
        let cfg = MetricConfig::new(parse_f64(r)?, spacing, parse_f64(eps)?).map_err(|e| CliError::schema(e.to_string()))?;
        out.push(cfg);
    }
    for w in out.windows(2) {
        if w[1].radius < w[0].radius || w[1].eps > w[0].eps {
            return Err(CliError::schema("schedule needs nondecreasing radius and nonincreasing eps"));
        }
    }
    Ok(out)
}
