use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::problems::Problem;
use crate::error::{Error, Result};
use crate::indicators::{IndicatorConfig, IndicatorKind};
use crate::limiter::LimiterConfig;
use crate::solver::StagePolicy;

/// Fully resolved description of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub problem: Problem,
    pub k: usize,
    /// Dyadic level (x level in 2D).
    pub level: u32,
    /// y level, 2D only.
    pub level_y: Option<u32>,
    pub indicator: IndicatorConfig,
    pub limiter: LimiterConfig,
    pub stage_policy: StagePolicy,
    pub cfl: f64,
    pub t_final: f64,
    /// Evenly spaced snapshot times in `(0, T]`; `T` itself is always written.
    pub outputs: usize,
    pub out_dir: Option<PathBuf>,
    /// Stop with an error after this many steps.
    pub max_steps: usize,
}

/// CFL number `0.6 / (2k + 1)`: 0.2 for k=1, 0.12 for k=2.
pub fn default_cfl(k: usize) -> f64 {
    0.6 / (2 * k + 1) as f64
}

impl ExperimentConfig {
    pub fn new(problem: Problem, k: usize) -> Self {
        let two_d = problem.is_2d();
        Self {
            problem,
            k,
            level: problem.default_level(),
            level_y: two_d.then(|| problem.default_level_y()),
            indicator: IndicatorConfig::default(),
            limiter: LimiterConfig::default(),
            stage_policy: StagePolicy::EveryStage,
            cfl: default_cfl(k),
            t_final: problem.default_t_final(),
            outputs: if two_d { 10 } else { 100 },
            out_dir: None,
            max_steps: 10_000_000,
        }
    }

    pub fn with_level(mut self, level: u32) -> Self {
        self.level = level;
        self
    }

    pub fn with_indicator(mut self, indicator: IndicatorConfig) -> Self {
        self.indicator = indicator;
        self
    }

    pub fn with_out_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.out_dir = Some(dir.into());
        self
    }

    pub fn is_2d(&self) -> bool {
        self.problem.is_2d()
    }

    pub fn n_elements(&self) -> usize {
        (1usize << self.level) * self.level_y.map_or(1, |l| 1usize << l)
    }

    pub fn validate(&self) -> Result<()> {
        self.indicator.validate()?;
        if self.k > crate::basis::MAX_DEGREE {
            return Err(Error::UnsupportedDegree(self.k));
        }
        if !(self.cfl > 0.0) {
            return Err(Error::invalid(format!("CFL must be positive, got {}", self.cfl)));
        }
        if !(self.t_final > 0.0) {
            return Err(Error::invalid(format!("final time must be positive, got {}", self.t_final)));
        }
        if self.level == 0 {
            return Err(Error::invalid("level must be at least 1"));
        }
        if self.is_2d() {
            if self.level_y.unwrap_or(0) == 0 {
                return Err(Error::invalid("2D runs need a y level of at least 1"));
            }
            if self.indicator.kind == IndicatorKind::Harten {
                return Err(Error::invalid("the Harten indicator is one-dimensional"));
            }
        } else if self.level_y.is_some() {
            return Err(Error::invalid(format!("{} is one-dimensional", self.problem)));
        }
        if self.indicator.kind == IndicatorKind::Harten && self.k == 0 {
            return Err(Error::invalid("the Harten indicator needs k >= 1"));
        }
        Ok(())
    }
}
