//! `key = value` run configuration covering grading, GA and topology keys.

use std::path::Path;

use thiserror::Error;

use crate::ga_router::GaConfig;
use crate::grading::GradingConfig;
use crate::topology::GeneratorConfig;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Invalid(String),
}

/// How the harness sizes generated topologies.
#[derive(Debug, Clone, PartialEq)]
pub struct TopologyPlan {
    /// Fixed region count; by default `size / region_size` clamped to `1..=8`.
    pub regions: Option<usize>,
    pub region_size: usize,
    /// Fixed edge density; by default chosen to hit `mean_degree`.
    pub edge_density: Option<f64>,
    /// Expected degree before `max_degree` is applied.
    pub mean_degree: f64,
    pub inter_region_factor: f64,
    pub gamma_max: f64,
    pub max_degree: Option<usize>,
}

impl Default for TopologyPlan {
    fn default() -> Self {
        TopologyPlan {
            regions: None,
            region_size: 16,
            edge_density: None,
            mean_degree: 10.0,
            inter_region_factor: 1.0,
            gamma_max: 5.0,
            max_degree: Some(4),
        }
    }
}

impl TopologyPlan {
    pub fn generator_for(&self, size: usize) -> GeneratorConfig {
        let regions = self.regions.unwrap_or((size / self.region_size).clamp(1, 8)).clamp(1, size.max(1));
        let density = self.edge_density.unwrap_or_else(|| {
            let region_size = size as f64 / regions as f64;
            let adjacent = match regions {
                1 => 0.0,
                2 => 1.0,
                _ => 2.0,
            };
            let pairs_per_node = (region_size - 1.0) + self.inter_region_factor * adjacent * region_size;
            if pairs_per_node <= 0.0 {
                1.0
            } else {
                (self.mean_degree / pairs_per_node).clamp(1e-6, 1.0)
            }
        });
        let mut g = GeneratorConfig::new(size, regions, density);
        g.inter_region_factor = self.inter_region_factor;
        g.gamma_max = self.gamma_max;
        g.max_degree = self.max_degree;
        g
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    pub grading: GradingConfig,
    pub ga: GaConfig,
    pub topology: TopologyPlan,
    /// Delay-model constant `D`; accepted, not used by any computation.
    pub delay_constant: Option<f64>,
    /// Channel cost `d_i(C_i)`; accepted, not used by any computation.
    pub channel_cost: Option<f64>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Parse {
                line,
                message: format!("expected key=value, found '{}'", content),
            })?;
            cfg.set(key.trim(), value.trim())
                .map_err(|message| ConfigError::Parse { line, message })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.grading.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        self.ga.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        let t = &self.topology;
        if !(t.mean_degree.is_finite() && t.mean_degree > 0.0) {
            return Err(ConfigError::Invalid("mean_degree must be positive".into()));
        }
        if let Some(d) = t.edge_density {
            if !(d > 0.0 && d <= 1.0) {
                return Err(ConfigError::Invalid("edge_density must lie in (0, 1]".into()));
            }
        }
        if t.region_size == 0 {
            return Err(ConfigError::Invalid("region_size must be positive".into()));
        }
        if t.max_degree == Some(0) {
            return Err(ConfigError::Invalid("max_degree must be positive".into()));
        }
        if t.regions == Some(0) {
            return Err(ConfigError::Invalid("regions must be positive".into()));
        }
        Ok(())
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
            value.parse().map_err(|_| format!("invalid value '{}' for {}", value, key))
        }
        let g = &mut self.grading;
        match key {
            "nl_threshold" => g.nl_threshold = num(key, value)?,
            "nd_limit" => g.nd_limit = num(key, value)?,
            "tc_threshold" => g.tc_threshold = num(key, value)?,
            "ra_threshold" => g.ra_threshold = num(key, value)?,
            "delay_threshold" => g.delay_threshold_s = num(key, value)?,
            "top_classes" => g.top_classes = num(key, value)?,
            "grade_window_min" => g.window.0 = num(key, value)?,
            "grade_window_max" => g.window.1 = num(key, value)?,
            "grade_map" => {
                let grades: Vec<i8> = value
                    .split(',')
                    .map(|s| num(key, s.trim()))
                    .collect::<Result<_, _>>()?;
                g.grade_map = grades
                    .try_into()
                    .map_err(|_| "grade_map needs six comma-separated grades".to_string())?;
            }
            "population_size" => self.ga.population_size = num(key, value)?,
            "generations" => self.ga.generations = num(key, value)?,
            "crossover_rate" => self.ga.crossover_rate = num(key, value)?,
            "mutation_rate" => self.ga.mutation_rate = num(key, value)?,
            "acceptance_threshold" => self.ga.acceptance_threshold = num(key, value)?,
            "seed" => self.ga.seed = num(key, value)?,
            "regions" => self.topology.regions = Some(num(key, value)?),
            "region_size" => self.topology.region_size = num(key, value)?,
            "max_degree" => {
                self.topology.max_degree = match value {
                    "none" => None,
                    v => Some(num(key, v)?),
                }
            }
            "edge_density" => self.topology.edge_density = Some(num(key, value)?),
            "mean_degree" => self.topology.mean_degree = num(key, value)?,
            "inter_region_factor" => self.topology.inter_region_factor = num(key, value)?,
            "gamma_max" => self.topology.gamma_max = num(key, value)?,
            "delay_constant" => self.delay_constant = Some(num(key, value)?),
            "channel_cost" => self.channel_cost = Some(num(key, value)?),
            _ => return Err(format!("unknown key '{}'", key)),
        }
        Ok(())
    }
}
