//! Run configuration: built-in defaults, then a config file, then flags.
//!
//! The config file is a flat `key = value` document (a TOML subset). Its path
//! comes from `--config`, or from `DIPCOH_CONFIG` when no flag is given. Only
//! one file is ever read.

use std::f64::consts::FRAC_PI_3;
use std::path::{Path, PathBuf};

use dipcoh_core::analysis::DEFAULT_FD_STEP;
use dipcoh_core::{parse_real, Axis, EvolutionSpec, ModelParams, Parameter};

use crate::error::CliError;
use crate::table::fmt_real;

pub const CONFIG_ENV: &str = "DIPCOH_CONFIG";

/// One layer of optional settings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub j: Option<f64>,
    pub d: Option<f64>,
    pub r: Option<f64>,
    pub bz: Option<f64>,
    pub gamma: Option<f64>,
    pub alpha: Option<f64>,
    pub t_max: Option<f64>,
    pub t_steps: Option<usize>,
    pub axis1: Option<Axis>,
    pub axis2: Option<Axis>,
    pub derivative: Option<Parameter>,
    pub fd_step: Option<f64>,
    pub observables: Option<Vec<Observable>>,
}

impl Overrides {
    /// Fields set in `top` win over fields set in `self`.
    pub fn overlay(self, top: Overrides) -> Overrides {
        Overrides {
            j: top.j.or(self.j),
            d: top.d.or(self.d),
            r: top.r.or(self.r),
            bz: top.bz.or(self.bz),
            gamma: top.gamma.or(self.gamma),
            alpha: top.alpha.or(self.alpha),
            t_max: top.t_max.or(self.t_max),
            t_steps: top.t_steps.or(self.t_steps),
            axis1: top.axis1.or(self.axis1),
            axis2: top.axis2.or(self.axis2),
            derivative: top.derivative.or(self.derivative),
            fd_step: top.fd_step.or(self.fd_step),
            observables: top.observables.or(self.observables),
        }
    }
}

/// Extra per-time-point columns for `evolve`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    Purity,
}

impl std::str::FromStr for Observable {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "purity" => Ok(Observable::Purity),
            other => Err(format!("unknown observable `{other}` (expected purity)")),
        }
    }
}

pub fn parse_observables(s: &str) -> Result<Vec<Observable>, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// Fully resolved settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: ModelParams,
    pub gamma: f64,
    pub alpha: f64,
    pub t_max: f64,
    pub t_steps: usize,
    pub axis1: Option<Axis>,
    pub axis2: Option<Axis>,
    pub derivative: Option<Parameter>,
    pub fd_step: f64,
    pub observables: Vec<Observable>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: ModelParams::default(),
            gamma: 0.1,
            alpha: FRAC_PI_3,
            t_max: 20.0,
            t_steps: 200,
            axis1: None,
            axis2: None,
            derivative: None,
            fd_step: DEFAULT_FD_STEP,
            observables: Vec::new(),
        }
    }
}

impl RunConfig {
    /// Applies a merged override layer on top of the defaults and validates.
    pub fn resolve(layer: Overrides) -> Result<Self, CliError> {
        let def = RunConfig::default();
        let params = ModelParams::new(
            layer.j.unwrap_or(def.params.j),
            layer.d.unwrap_or(def.params.d),
            layer.r.unwrap_or(def.params.r),
            layer.bz.unwrap_or(def.params.bz),
        )
        .map_err(|e| CliError::usage(e.to_string()))?;
        let cfg = RunConfig {
            params,
            gamma: layer.gamma.unwrap_or(def.gamma),
            alpha: layer.alpha.unwrap_or(def.alpha),
            t_max: layer.t_max.unwrap_or(def.t_max),
            t_steps: layer.t_steps.unwrap_or(def.t_steps),
            axis1: layer.axis1,
            axis2: layer.axis2,
            derivative: layer.derivative,
            fd_step: layer.fd_step.unwrap_or(def.fd_step),
            observables: layer.observables.unwrap_or_default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(CliError::usage(format!(
                "gamma must be >= 0, got {}",
                self.gamma
            )));
        }
        if !(0.0..=std::f64::consts::PI).contains(&self.alpha) {
            return Err(CliError::usage(format!(
                "alpha must lie in [0, pi], got {}",
                self.alpha
            )));
        }
        if !(self.t_max.is_finite() && self.t_max >= 0.0) {
            return Err(CliError::usage(format!(
                "t-max must be >= 0, got {}",
                self.t_max
            )));
        }
        if self.t_steps == 0 {
            return Err(CliError::usage("t-steps must be >= 1"));
        }
        if !(self.fd_step.is_finite() && self.fd_step > 0.0) {
            return Err(CliError::usage(format!(
                "fd-step must be > 0, got {}",
                self.fd_step
            )));
        }
        Ok(())
    }

    /// Evaluation times `0, t_max/n, ..., t_max` for `n = t_steps`.
    pub fn times(&self) -> Vec<f64> {
        dipcoh_core::analysis::uniform_times(self.t_max, self.t_steps + 1)
    }

    pub fn evolution_spec(&self) -> EvolutionSpec {
        EvolutionSpec {
            params: self.params,
            gamma: self.gamma,
            alpha: self.alpha,
            times: self.times(),
        }
    }

    /// `key: value` lines describing every resolved setting.
    pub fn echo(&self, command: &str) -> String {
        let axis = |a: &Option<Axis>| match a {
            Some(a) => format!(
                "{}:{}:{}:{}",
                a.param,
                fmt_real(a.min),
                fmt_real(a.max),
                a.count
            ),
            None => "none".to_string(),
        };
        let observables = if self.observables.is_empty() {
            "none".to_string()
        } else {
            self.observables
                .iter()
                .map(|o| match o {
                    Observable::Purity => "purity",
                })
                .collect::<Vec<_>>()
                .join(",")
        };
        [
            format!("dipcoh {command}"),
            format!("J: {}", fmt_real(self.params.j)),
            format!("D: {}", fmt_real(self.params.d)),
            format!("r: {}", fmt_real(self.params.r)),
            format!("Bz: {}", fmt_real(self.params.bz)),
            format!("gamma: {}", fmt_real(self.gamma)),
            format!("alpha: {}", fmt_real(self.alpha)),
            format!("t_max: {}", fmt_real(self.t_max)),
            format!("t_steps: {}", self.t_steps),
            format!("axis1: {}", axis(&self.axis1)),
            format!("axis2: {}", axis(&self.axis2)),
            format!(
                "derivative: {}",
                self.derivative
                    .map_or("none".to_string(), |p| p.to_string())
            ),
            format!("fd_step: {}", fmt_real(self.fd_step)),
            format!("observables: {observables}"),
        ]
        .join("\n")
    }
}

/// Picks the config file: the flag if given, else the environment variable.
pub fn config_path(flag: Option<&Path>, env: Option<std::ffi::OsString>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| env.filter(|v| !v.is_empty()).map(PathBuf::from))
}

pub fn load_config_file(path: &Path) -> Result<Overrides, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config file {}: {e}", path.display())))?;
    parse_config(&text)
}

/// Parses the `key = value` config document.
pub fn parse_config(text: &str) -> Result<Overrides, CliError> {
    let table: toml::Table = text
        .parse()
        .map_err(|e| CliError::usage(format!("bad config file: {e}")))?;
    let mut out = Overrides::default();
    for (key, value) in &table {
        let as_text = match value {
            toml::Value::String(s) => s.clone(),
            toml::Value::Float(f) => f.to_string(),
            toml::Value::Integer(i) => i.to_string(),
            _ => {
                return Err(CliError::usage(format!(
                    "config key `{key}` must be a number or string"
                )))
            }
        };
        let real = || {
            parse_real(&as_text).ok_or_else(|| {
                CliError::usage(format!("config key `{key}`: bad number `{as_text}`"))
            })
        };
        match key.as_str() {
            "J" => out.j = Some(real()?),
            "D" => out.d = Some(real()?),
            "r" => out.r = Some(real()?),
            "Bz" => out.bz = Some(real()?),
            "gamma" => out.gamma = Some(real()?),
            "alpha" => out.alpha = Some(real()?),
            "t_max" | "t-max" => out.t_max = Some(real()?),
            "t_steps" | "t-steps" => {
                out.t_steps = Some(as_text.parse().map_err(|_| {
                    CliError::usage(format!("config key `{key}`: bad count `{as_text}`"))
                })?)
            }
            "axis1" => out.axis1 = Some(as_text.parse().map_err(CliError::usage)?),
            "axis2" => out.axis2 = Some(as_text.parse().map_err(CliError::usage)?),
            "derivative" => out.derivative = Some(as_text.parse().map_err(CliError::usage)?),
            "fd_step" | "fd-step" => out.fd_step = Some(real()?),
            "observables" => {
                out.observables = Some(parse_observables(&as_text).map_err(CliError::usage)?)
            }
            other => return Err(CliError::usage(format!("unknown config key `{other}`"))),
        }
    }
    Ok(out)
}
