//! The five subcommands. Each writes a table and reports whether the run
//! succeeded; hard failures come back as errors.

use std::io::Write;

use dipcoh_core::analysis::{default_step, steady_coherence_squared};
use dipcoh_core::evolution::SpectralPropagator;
use dipcoh_core::{
    build_hamiltonian, closed_form_levels, coherence_squared, fd_partial_c2, hermitian_eigensystem,
    initial_state, run_sweep, steady_state, DensityMatrix4, EigenSource, SweepRow, SweepSpec,
};

use crate::config::{Observable, RunConfig};
use crate::error::CliError;
use crate::table::{fmt_real, TableWriter};

/// Agreement threshold for `eigen`.
pub const EIGEN_TOL: f64 = 1e-10;

/// Whether the command's own checks passed. `false` maps to exit code 1.
pub type Outcome = Result<bool, CliError>;

fn header(cfg: &RunConfig, command: &str, w: &mut TableWriter<impl Write>) -> Result<(), CliError> {
    w.comment(&cfg.echo(command))
}

fn entry_headers() -> Vec<String> {
    let mut h = Vec::with_capacity(32);
    for i in 1..=4 {
        for j in 1..=4 {
            h.push(format!("rho{i}{j}_re"));
            h.push(format!("rho{i}{j}_im"));
        }
    }
    h
}

fn entry_fields(rho: &DensityMatrix4) -> Vec<String> {
    let mut f = Vec::with_capacity(32);
    for i in 0..4 {
        for j in 0..4 {
            let z = rho.get(i, j);
            f.push(fmt_real(z.re));
            f.push(fmt_real(z.im));
        }
    }
    f
}

fn require_dephasing(cfg: &RunConfig, command: &str) -> Result<(), CliError> {
    if cfg.gamma > 0.0 {
        Ok(())
    } else {
        Err(CliError::usage(format!(
            "{command} needs gamma > 0: without dephasing there is no stationary limit"
        )))
    }
}

/// Closed-form and numeric spectra side by side.
pub fn cmd_eigen(cfg: &RunConfig, out: impl Write) -> Outcome {
    let h = build_hamiltonian(&cfg.params)?;
    let levels = closed_form_levels(&cfg.params)?;
    let numeric = hermitian_eigensystem(&h)?;

    let mut sorted: Vec<_> = levels.iter().collect();
    sorted.sort_by(|a, b| a.energy.total_cmp(&b.energy));

    let mut w = TableWriter::new(out);
    header(cfg, "eigen", &mut w)?;
    w.record(["rank", "label", "closed_form", "numeric", "abs_diff"])?;
    let mut max_diff = 0.0_f64;
    for (k, level) in sorted.iter().enumerate() {
        let diff = (level.energy - numeric.values[k]).abs();
        max_diff = max_diff.max(diff);
        w.record([
            k.to_string(),
            format!("E{}", level.label),
            fmt_real(level.energy),
            fmt_real(numeric.values[k]),
            fmt_real(diff),
        ])?;
    }

    let mut residual = 0.0_f64;
    for level in &levels {
        let hv = h.mul_vec(&level.vector);
        for i in 0..4 {
            residual = residual.max((hv[i] - level.vector[i] * level.energy).norm());
        }
    }
    let bound = EIGEN_TOL * (1.0 + h.frobenius_norm());
    let ok = max_diff <= EIGEN_TOL && residual <= bound;
    w.comment(&format!(
        "max_abs_diff: {}\nmax_residual: {}\nagreement: {}",
        fmt_real(max_diff),
        fmt_real(residual),
        if ok { "yes" } else { "no" }
    ))?;
    w.finish()?;
    Ok(ok)
}

/// Coherence and the full density matrix on the configured time grid.
pub fn cmd_evolve(cfg: &RunConfig, out: impl Write) -> Outcome {
    let spec = cfg.evolution_spec();
    spec.validate()
        .map_err(|e| CliError::usage(e.to_string()))?;
    let prop = SpectralPropagator::new(&cfg.params, EigenSource::ClosedForm)?;
    let rho0 = initial_state(cfg.alpha)?;
    let purity = cfg.observables.contains(&Observable::Purity);

    let mut w = TableWriter::new(out);
    header(cfg, "evolve", &mut w)?;
    let mut cols = vec!["t".to_string(), "C".into(), "C2".into()];
    cols.extend(entry_headers());
    if purity {
        cols.push("purity".into());
    }
    w.record(&cols)?;
    for &t in &spec.times {
        let rho = prop.evolve(cfg.gamma, &rho0, t)?;
        let c2 = coherence_squared(&rho)?;
        let mut row = vec![fmt_real(t), fmt_real(c2.sqrt()), fmt_real(c2)];
        row.extend(entry_fields(&rho));
        if purity {
            row.push(fmt_real(rho.purity()));
        }
        w.record(&row)?;
    }
    w.finish()?;
    Ok(true)
}

/// The stationary state reached under dephasing.
pub fn cmd_steady(cfg: &RunConfig, out: impl Write) -> Outcome {
    require_dephasing(cfg, "steady")?;
    let rho = steady_state(&cfg.params, cfg.alpha)?;
    let c2 = coherence_squared(&rho)?;

    let mut w = TableWriter::new(out);
    header(cfg, "steady", &mut w)?;
    let mut cols = vec!["C".to_string(), "C2".into()];
    cols.extend(entry_headers());
    w.record(&cols)?;
    let mut row = vec![fmt_real(c2.sqrt()), fmt_real(c2)];
    row.extend(entry_fields(&rho));
    w.record(&row)?;
    w.finish()?;
    Ok(true)
}

/// Sign verdict over the derivative column; poisoned rows are ignored.
pub fn sign_verdict(rows: &[SweepRow]) -> &'static str {
    let values: Vec<f64> = rows
        .iter()
        .filter(|r| !r.is_poisoned())
        .filter_map(|r| r.dc2)
        .collect();
    if values.is_empty() {
        "mixed"
    } else if values.iter().all(|&v| v > 0.0) {
        "all-positive"
    } else if values.iter().all(|&v| v < 0.0) {
        "all-negative"
    } else {
        "mixed"
    }
}

/// Steady-state coherence over a one- or two-axis grid.
pub fn cmd_sweep(cfg: &RunConfig, out: impl Write) -> Outcome {
    require_dephasing(cfg, "sweep")?;
    let axis1 = cfg
        .axis1
        .ok_or_else(|| CliError::usage("sweep needs --axis1 param:min:max:count"))?;
    let spec = SweepSpec {
        base: cfg.params,
        alpha: cfg.alpha,
        gamma: cfg.gamma,
        axis1,
        axis2: cfg.axis2,
        derivative_target: cfg.derivative,
        fd_step: cfg.fd_step,
    };
    spec.validate()
        .map_err(|e| CliError::usage(e.to_string()))?;
    let rows = run_sweep(&spec)?;

    let mut w = TableWriter::new(out);
    header(cfg, "sweep", &mut w)?;
    let mut cols = vec!["J", "D", "r", "Bz", "alpha", "gamma", "C", "C2"];
    if cfg.derivative.is_some() {
        cols.push("dC2");
    }
    cols.push("error");
    w.record(&cols)?;
    for row in &rows {
        let p = &row.params;
        let mut fields: Vec<String> = [p.j, p.d, p.r, p.bz, row.alpha, row.gamma, row.c, row.c2]
            .into_iter()
            .map(fmt_real)
            .collect();
        if let Some(d) = row.dc2 {
            fields.push(fmt_real(d));
        }
        fields.push(row.error.clone().unwrap_or_default());
        w.record(&fields)?;
    }
    let poisoned = rows.iter().filter(|r| r.is_poisoned()).count();
    let mut footer = format!("rows: {}\npoisoned: {poisoned}", rows.len());
    if cfg.derivative.is_some() {
        footer.push_str(&format!("\nsign: {}", sign_verdict(&rows)));
    }
    w.comment(&footer)?;
    w.finish()?;
    Ok(poisoned == 0)
}

/// `∂C²/∂x` at the configured point.
pub fn cmd_derivative(cfg: &RunConfig, out: impl Write) -> Outcome {
    require_dephasing(cfg, "derivative")?;
    let target = cfg
        .derivative
        .ok_or_else(|| CliError::usage("derivative needs --derivative <D|r|Bz|alpha>"))?;
    let x = target.get(&cfg.params, cfg.alpha);
    let h = default_step(x, cfg.fd_step);
    let dc2 = fd_partial_c2(&cfg.params, cfg.alpha, target, Some(h))?;
    let c2 = steady_coherence_squared(&cfg.params, cfg.alpha)?;

    let mut w = TableWriter::new(out);
    header(cfg, "derivative", &mut w)?;
    w.record(["target", "x", "h", "dC2", "C", "C2"])?;
    w.record([
        target.to_string(),
        fmt_real(x),
        fmt_real(h),
        fmt_real(dc2),
        fmt_real(c2.sqrt()),
        fmt_real(c2),
    ])?;
    w.finish()?;
    Ok(true)
}
