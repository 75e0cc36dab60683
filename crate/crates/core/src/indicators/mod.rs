//! Troubled-cell indicators: the global multiwavelet indicator and the
//! KXRCF and Harten baselines.

mod harten;
mod kxrcf;
mod multiwavelet;
mod variables;

pub use harten::harten_indicate_1d;
pub use kxrcf::{kxrcf_indicate_1d, kxrcf_indicate_2d};
pub use multiwavelet::{MultiwaveletIndicator, NOISE_FLOOR};
pub use variables::VariableMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{DgField1D, DgField2D};
use crate::solver::{Dg1D, Dg2D};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndicatorKind {
    Multiwavelet,
    Kxrcf,
    Harten,
}

impl IndicatorKind {
    pub fn label(self) -> &'static str {
        match self {
            IndicatorKind::Multiwavelet => "mw",
            IndicatorKind::Kxrcf => "kxrcf",
            IndicatorKind::Harten => "harten",
        }
    }
}

impl std::str::FromStr for IndicatorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mw" | "multiwavelet" => Ok(IndicatorKind::Multiwavelet),
            "kxrcf" => Ok(IndicatorKind::Kxrcf),
            "harten" => Ok(IndicatorKind::Harten),
            _ => Err(Error::invalid(format!("unknown indicator '{s}'"))),
        }
    }
}

/// Which quantities the indicator inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum IndicatorVars {
    #[default]
    Density,
    DensityEntropy,
}

impl IndicatorVars {
    pub fn label(self) -> &'static str {
        match self {
            IndicatorVars::Density => "density",
            IndicatorVars::DensityEntropy => "density+entropy",
        }
    }
}

impl std::str::FromStr for IndicatorVars {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "density" => Ok(IndicatorVars::Density),
            "density+entropy" => Ok(IndicatorVars::DensityEntropy),
            _ => Err(Error::invalid(format!("unknown indicator variables '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndicatorConfig {
    pub kind: IndicatorKind,
    /// 1D multiwavelet threshold.
    pub c: f64,
    pub c_alpha: f64,
    pub c_beta: f64,
    pub c_gamma: f64,
    pub harten_alpha: f64,
    pub vars: IndicatorVars,
}

impl Default for IndicatorConfig {
    fn default() -> Self {
        Self {
            kind: IndicatorKind::Multiwavelet,
            c: 0.1,
            c_alpha: 0.1,
            c_beta: 0.1,
            c_gamma: 0.1,
            harten_alpha: 1.5,
            vars: IndicatorVars::Density,
        }
    }
}

impl IndicatorConfig {
    pub fn multiwavelet(c: f64) -> Self {
        Self { c, c_alpha: c, c_beta: c, c_gamma: c, ..Self::default() }
    }

    pub fn kxrcf(vars: IndicatorVars) -> Self {
        Self { kind: IndicatorKind::Kxrcf, vars, ..Self::default() }
    }

    pub fn harten(alpha: f64, vars: IndicatorVars) -> Self {
        Self { kind: IndicatorKind::Harten, harten_alpha: alpha, vars, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("C", self.c), ("C_alpha", self.c_alpha), ("C_beta", self.c_beta), ("C_gamma", self.c_gamma)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::invalid(format!("{name} = {v} outside [0, 1]")));
            }
        }
        if !(self.harten_alpha > 0.0) {
            return Err(Error::invalid(format!("harten alpha must be positive, got {}", self.harten_alpha)));
        }
        Ok(())
    }

    /// Threshold label used in statistics output.
    pub fn threshold_label(&self, two_d: bool) -> String {
        match self.kind {
            IndicatorKind::Multiwavelet if two_d => format!("{}:{}:{}", self.c_alpha, self.c_beta, self.c_gamma),
            IndicatorKind::Multiwavelet => format!("{}", self.c),
            IndicatorKind::Harten => format!("{}", self.harten_alpha),
            IndicatorKind::Kxrcf => "1".to_string(),
        }
    }
}

#[inline]
pub(crate) fn above_cutoff(v: f64, cutoff: f64) -> bool {
    v > cutoff
}

/// Flags per element of a 1D mesh together with the indicator quantity per
/// variable and the cutoff it was compared with.
#[derive(Debug, Clone, PartialEq)]
pub struct TroubledSet1D {
    pub flags: Vec<bool>,
    /// `[variable][element]`
    pub values: Vec<Vec<f64>>,
    pub cutoffs: Vec<f64>,
}

impl TroubledSet1D {
    pub fn empty(n: usize) -> Self {
        Self { flags: vec![false; n], values: Vec::new(), cutoffs: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn count(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.flags.iter().enumerate().filter_map(|(i, &f)| f.then_some(i)).collect()
    }

    pub fn percentage(&self) -> f64 {
        100.0 * self.count() as f64 / self.len() as f64
    }
}

/// Flags on one 2D region grid (`nx × ny`, x fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct ModeMask {
    pub nx: usize,
    pub ny: usize,
    pub flags: Vec<bool>,
    pub values: Vec<Vec<f64>>,
    pub cutoffs: Vec<f64>,
}

impl ModeMask {
    pub fn empty(nx: usize, ny: usize) -> Self {
        Self { nx, ny, flags: vec![false; nx * ny], values: Vec::new(), cutoffs: Vec::new() }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.flags[j * self.nx + i]
    }

    pub fn count(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }

    pub fn indices(&self) -> Vec<(usize, usize)> {
        self.flags
            .iter()
            .enumerate()
            .filter_map(|(idx, &f)| f.then_some((idx % self.nx, idx / self.nx)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Alpha,
    Beta,
    Gamma,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Alpha, Mode::Beta, Mode::Gamma];

    pub fn label(self) -> &'static str {
        match self {
            Mode::Alpha => "alpha",
            Mode::Beta => "beta",
            Mode::Gamma => "gamma",
        }
    }
}

/// 2D flags: per-mode region masks when the indicator has modes, and the
/// combined mask on fine elements.
#[derive(Debug, Clone, PartialEq)]
pub struct TroubledSet2D {
    pub nx: usize,
    pub ny: usize,
    pub combined: Vec<bool>,
    pub modes: Option<[ModeMask; 3]>,
}

impl TroubledSet2D {
    pub fn from_combined(nx: usize, ny: usize, combined: Vec<bool>) -> Self {
        Self { nx, ny, combined, modes: None }
    }

    /// α regions cover two fine elements in x, β regions two in y, γ one.
    pub fn from_modes(nx: usize, ny: usize, alpha: ModeMask, beta: ModeMask, gamma: ModeMask) -> Self {
        let mut combined = gamma.flags.clone();
        for (ci, j) in alpha.indices() {
            combined[j * nx + 2 * ci] = true;
            combined[j * nx + 2 * ci + 1] = true;
        }
        for (i, cj) in beta.indices() {
            combined[2 * cj * nx + i] = true;
            combined[(2 * cj + 1) * nx + i] = true;
        }
        Self { nx, ny, combined, modes: Some([alpha, beta, gamma]) }
    }

    pub fn mode(&self, m: Mode) -> Option<&ModeMask> {
        self.modes.as_ref().map(|ms| &ms[m as usize])
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.combined[j * self.nx + i]
    }

    pub fn count(&self) -> usize {
        self.combined.iter().filter(|&&f| f).count()
    }

    pub fn indices(&self) -> Vec<(usize, usize)> {
        self.combined
            .iter()
            .enumerate()
            .filter_map(|(idx, &f)| f.then_some((idx % self.nx, idx / self.nx)))
            .collect()
    }

    pub fn percentage(&self) -> f64 {
        100.0 * self.count() as f64 / self.combined.len() as f64
    }
}

/// Configured indicator for 1D runs.
#[derive(Debug, Clone)]
pub struct Indicator1D {
    pub config: IndicatorConfig,
    mw: Option<MultiwaveletIndicator>,
}

impl Indicator1D {
    pub fn new(config: IndicatorConfig, k: usize) -> Result<Self> {
        config.validate()?;
        let mw = match config.kind {
            IndicatorKind::Multiwavelet => Some(MultiwaveletIndicator::new(k)?),
            IndicatorKind::Harten if k == 0 => {
                return Err(Error::invalid("the Harten indicator needs k >= 1"));
            }
            _ => None,
        };
        Ok(Self { config, mw })
    }

    pub fn indicate(&self, u: &DgField1D, dg: &Dg1D, t: f64) -> Result<TroubledSet1D> {
        let law = dg.law.as_ref();
        match self.config.kind {
            IndicatorKind::Multiwavelet => {
                let map = VariableMap::new(law, self.config.vars, u.degree())?;
                let vars = map.field_1d(u)?;
                let comps: Vec<usize> = (0..map.nvars()).collect();
                self.mw.as_ref().expect("built in new").indicate_1d(&vars, &comps, self.config.c)
            }
            IndicatorKind::Kxrcf => kxrcf_indicate_1d(u, dg, t, self.config.vars),
            IndicatorKind::Harten => harten_indicate_1d(u, dg, t, self.config.vars, self.config.harten_alpha),
        }
    }
}

/// Configured indicator for 2D runs.
#[derive(Debug, Clone)]
pub struct Indicator2D {
    pub config: IndicatorConfig,
    mw: Option<MultiwaveletIndicator>,
}

impl Indicator2D {
    pub fn new(config: IndicatorConfig, k: usize) -> Result<Self> {
        config.validate()?;
        let mw = match config.kind {
            IndicatorKind::Multiwavelet => Some(MultiwaveletIndicator::new(k)?),
            IndicatorKind::Kxrcf => None,
            IndicatorKind::Harten => return Err(Error::invalid("the Harten indicator is one-dimensional")),
        };
        Ok(Self { config, mw })
    }

    pub fn indicate(&self, u: &DgField2D, dg: &Dg2D, t: f64) -> Result<TroubledSet2D> {
        let law = dg.law.as_ref();
        match self.config.kind {
            IndicatorKind::Multiwavelet => {
                let map = VariableMap::new(law, self.config.vars, u.degree())?;
                let vars = map.field_2d(u)?;
                let comps: Vec<usize> = (0..map.nvars()).collect();
                let c = [self.config.c_alpha, self.config.c_beta, self.config.c_gamma];
                self.mw.as_ref().expect("built in new").indicate_2d(&vars, &comps, c)
            }
            IndicatorKind::Kxrcf => kxrcf_indicate_2d(u, dg, t, self.config.vars),
            IndicatorKind::Harten => unreachable!("rejected in new"),
        }
    }
}
