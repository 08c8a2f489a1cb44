//! Steady-state coherence, finite-difference sensitivities of `C²`,
//! parameter sweeps and coherence time series.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::coherence::{coherence, coherence_squared};
use crate::error::{invalid, Result};
use crate::evolution::{
    check_alpha, check_gamma, initial_state, steady_state, EigenSource, EvolutionSpec,
    SpectralPropagator,
};
use crate::model::ModelParams;

/// Default relative finite-difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// A parameter that can be swept or differentiated against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parameter {
    D,
    R,
    Bz,
    Alpha,
}

impl Parameter {
    pub const ALL: [Parameter; 4] = [Parameter::D, Parameter::R, Parameter::Bz, Parameter::Alpha];

    pub fn name(self) -> &'static str {
        match self {
            Parameter::D => "D",
            Parameter::R => "r",
            Parameter::Bz => "Bz",
            Parameter::Alpha => "alpha",
        }
    }

    pub fn get(self, p: &ModelParams, alpha: f64) -> f64 {
        match self {
            Parameter::D => p.d,
            Parameter::R => p.r,
            Parameter::Bz => p.bz,
            Parameter::Alpha => alpha,
        }
    }

    pub fn set(self, p: &mut ModelParams, alpha: &mut f64, value: f64) {
        match self {
            Parameter::D => p.d = value,
            Parameter::R => p.r = value,
            Parameter::Bz => p.bz = value,
            Parameter::Alpha => *alpha = value,
        }
    }

    /// Rejects values outside the parameter's domain.
    fn check(self, value: f64) -> Result<()> {
        let ok = value.is_finite()
            && match self {
                Parameter::D => value >= 0.0,
                Parameter::R => value > 0.0,
                Parameter::Bz => true,
                Parameter::Alpha => (0.0..=PI).contains(&value),
            };
        if ok {
            Ok(())
        } else {
            Err(invalid(self.name(), value, "outside the parameter domain"))
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Parameter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "D" | "d" => Ok(Parameter::D),
            "r" | "R" => Ok(Parameter::R),
            "Bz" | "bz" | "B_z" => Ok(Parameter::Bz),
            "alpha" => Ok(Parameter::Alpha),
            other => Err(format!(
                "unknown parameter `{other}` (expected D, r, Bz or alpha)"
            )),
        }
    }
}

/// `C(ρ_∞)` for the Bell-mixture initial state.
pub fn steady_coherence(p: &ModelParams, alpha: f64) -> Result<f64> {
    coherence(&steady_state(p, alpha)?)
}

pub fn steady_coherence_squared(p: &ModelParams, alpha: f64) -> Result<f64> {
    coherence_squared(&steady_state(p, alpha)?)
}

/// Absolute step used when none is given: `rel · max(1, |x|)`.
pub fn default_step(x: f64, rel: f64) -> f64 {
    rel * x.abs().max(1.0)
}

/// Central difference of the steady-state `C²` with respect to `target`.
///
/// `h` defaults to `1e-5 · max(1, |x|)`. Both stencil points must lie inside
/// the parameter domain; no one-sided fallback is attempted.
pub fn fd_partial_c2(
    p: &ModelParams,
    alpha: f64,
    target: Parameter,
    h: Option<f64>,
) -> Result<f64> {
    p.validate()?;
    check_alpha(alpha)?;
    let x = target.get(p, alpha);
    let h = h.unwrap_or_else(|| default_step(x, DEFAULT_FD_STEP));
    if !(h.is_finite() && h > 0.0) {
        return Err(invalid("h", h, "finite-difference step must be > 0"));
    }
    let eval = |value: f64| -> Result<f64> {
        target.check(value)?;
        let (mut q, mut a) = (*p, alpha);
        target.set(&mut q, &mut a, value);
        steady_coherence_squared(&q, a)
    };
    let plus = eval(x + h)?;
    let minus = eval(x - h)?;
    Ok((plus - minus) / (2.0 * h))
}

/// One swept axis: `count` evenly spaced values from `min` to `max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub param: Parameter,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(param: Parameter, min: f64, max: f64, count: usize) -> Self {
        Self {
            param,
            min,
            max,
            count,
        }
    }

    /// A single-point axis.
    pub fn point(param: Parameter, value: f64) -> Self {
        Self::new(param, value, value, 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(invalid("count", 0.0, "axis needs at least one point"));
        }
        if self.count == 1 && self.min != self.max {
            return Err(invalid(
                "count",
                1.0,
                "a single-point axis needs min == max",
            ));
        }
        if self.min > self.max {
            return Err(invalid(self.param.name(), self.min, "axis min exceeds max"));
        }
        self.param.check(self.min)?;
        self.param.check(self.max)
    }

    pub fn value(&self, k: usize) -> f64 {
        if self.count <= 1 {
            return self.min;
        }
        if k + 1 == self.count {
            return self.max;
        }
        self.min + (self.max - self.min) * k as f64 / (self.count - 1) as f64
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |k| self.value(k))
    }
}

impl FromStr for Axis {
    type Err = String;

    /// `param:min:max:count`, or `param:value` for a single point.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let param: Parameter = parts[0].parse()?;
        let num = |t: &str| -> std::result::Result<f64, String> {
            crate::parse_real(t).ok_or_else(|| format!("bad number `{t}` in axis `{s}`"))
        };
        match parts.len() {
            2 => Ok(Axis::point(param, num(parts[1])?)),
            4 => {
                let count = parts[3]
                    .parse::<usize>()
                    .map_err(|_| format!("bad count `{}` in axis `{s}`", parts[3]))?;
                Ok(Axis::new(param, num(parts[1])?, num(parts[2])?, count))
            }
            _ => Err(format!("axis `{s}` must look like param:min:max:count")),
        }
    }
}

/// A steady-state sweep over one or two parameter axes.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: ModelParams,
    pub alpha: f64,
    /// Recorded with each row; the stationary state does not depend on it
    /// once `γ > 0`.
    pub gamma: f64,
    pub axis1: Axis,
    pub axis2: Option<Axis>,
    pub derivative_target: Option<Parameter>,
    /// Relative finite-difference step.
    pub fd_step: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        check_alpha(self.alpha)?;
        check_gamma(self.gamma)?;
        self.axis1.validate()?;
        if let Some(a2) = &self.axis2 {
            a2.validate()?;
        }
        if !(self.fd_step.is_finite() && self.fd_step > 0.0) {
            return Err(invalid("fd_step", self.fd_step, "must be > 0"));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.axis1.count * self.axis2.map_or(1, |a| a.count)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One sweep record. A poisoned row has NaN results and an error message.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub params: ModelParams,
    pub alpha: f64,
    pub gamma: f64,
    pub c: f64,
    pub c2: f64,
    pub dc2: Option<f64>,
    pub error: Option<String>,
}

impl SweepRow {
    pub fn is_poisoned(&self) -> bool {
        self.error.is_some()
    }
}

fn evaluate_row(spec: &SweepSpec, params: ModelParams, alpha: f64) -> SweepRow {
    let result = (|| -> Result<(f64, f64, Option<f64>)> {
        let c = steady_coherence(&params, alpha)?;
        let c2 = c * c;
        let dc2 = match spec.derivative_target {
            Some(target) => {
                let x = target.get(&params, alpha);
                let h = default_step(x, spec.fd_step);
                Some(fd_partial_c2(&params, alpha, target, Some(h))?)
            }
            None => None,
        };
        Ok((c, c2, dc2))
    })();
    match result {
        Ok((c, c2, dc2)) => SweepRow {
            params,
            alpha,
            gamma: spec.gamma,
            c,
            c2,
            dc2,
            error: None,
        },
        Err(e) => SweepRow {
            params,
            alpha,
            gamma: spec.gamma,
            c: f64::NAN,
            c2: f64::NAN,
            dc2: spec.derivative_target.map(|_| f64::NAN),
            error: Some(e.to_string()),
        },
    }
}

/// Evaluates every grid point, `axis1` outer and `axis2` inner.
///
/// Failures at individual points become poisoned rows rather than gaps.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let inner: Vec<Option<f64>> = match &spec.axis2 {
        Some(a) => a.values().map(Some).collect(),
        None => vec![None],
    };
    let mut rows = Vec::with_capacity(spec.len());
    for v1 in spec.axis1.values() {
        for v2 in &inner {
            let (mut params, mut alpha) = (spec.base, spec.alpha);
            spec.axis1.param.set(&mut params, &mut alpha, v1);
            if let (Some(a2), Some(v2)) = (&spec.axis2, v2) {
                a2.param.set(&mut params, &mut alpha, *v2);
            }
            rows.push(evaluate_row(spec, params, alpha));
        }
    }
    Ok(rows)
}

/// Coherence at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimePoint {
    pub t: f64,
    pub c: f64,
    pub c2: f64,
}

/// Coherence of the evolved Bell-mixture state at every time in the spec.
pub fn time_series(spec: &EvolutionSpec) -> Result<Vec<TimePoint>> {
    spec.validate()?;
    let prop = SpectralPropagator::new(&spec.params, EigenSource::ClosedForm)?;
    let rho0 = initial_state(spec.alpha)?;
    spec.times
        .iter()
        .map(|&t| {
            let c2 = coherence_squared(&prop.evolve(spec.gamma, &rho0, t)?)?;
            Ok(TimePoint {
                t,
                c: c2.sqrt(),
                c2,
            })
        })
        .collect()
}

/// `count` evenly spaced times on `[0, t_max]`.
pub fn uniform_times(t_max: f64, count: usize) -> Vec<f64> {
    Axis::new(Parameter::D, 0.0, t_max, count)
        .values()
        .collect()
}

/// Earliest grid time after which `C` stays within `rel · |target|` of
/// `target`. `None` if the final point is still outside the band.
pub fn settling_time(series: &[TimePoint], target: f64, rel: f64) -> Option<f64> {
    let band = rel * target.abs();
    let last_outside = series.iter().rposition(|p| (p.c - target).abs() > band);
    match last_outside {
        None => series.first().map(|p| p.t),
        Some(k) if k + 1 < series.len() => Some(series[k + 1].t),
        Some(_) => None,
    }
}

/// Number of sign changes of `C - level` along the series; points exactly at
/// the level are skipped.
pub fn count_crossings(series: &[TimePoint], level: f64) -> usize {
    let mut crossings = 0;
    let mut prev_sign = 0.0;
    for p in series {
        let s = (p.c - level).signum();
        if p.c == level {
            continue;
        }
        if prev_sign != 0.0 && s != prev_sign {
            crossings += 1;
        }
        prev_sign = s;
    }
    crossings
}
