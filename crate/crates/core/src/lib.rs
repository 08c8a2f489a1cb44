//! Intrinsic (Milburn) decoherence of a two-qubit Heisenberg XXX chain with
//! dipole-dipole coupling in a longitudinal field, and the coherence of the
//! evolving state measured as the quantum Jensen-Shannon distance to its
//! dephased counterpart.

#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod coherence;
pub mod error;
pub mod evolution;
pub mod model;
pub mod qops;

pub use analysis::{
    fd_partial_c2, run_sweep, steady_coherence, time_series, Axis, Parameter, SweepRow, SweepSpec,
    TimePoint,
};
pub use coherence::{coherence, coherence_squared, dephase, jsd_distance};
pub use error::{Error, Result};
pub use evolution::{
    closed_form_elements, evolve_spectral, evolve_stepped_oracle, initial_state, steady_state,
    EigenSource, EvolutionSpec, SpectralPropagator,
};
pub use model::{
    build_hamiltonian, closed_form_levels, derived_quantities, eigensystem_closed_form,
    DerivedQuantities, Level, ModelParams,
};
pub use qops::{
    hermitian_eigensystem, validate_density_matrix, von_neumann_entropy, ComplexMatrix4,
    DensityMatrix4, EigenSystem, C64,
};

/// Parses a real number, also accepting `pi` fractions such as `pi/3`,
/// `2pi/3` or `2*pi/3`.
pub fn parse_real(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Ok(v) = s.parse::<f64>() {
        return Some(v);
    }
    let lower = s.to_ascii_lowercase();
    let (num, den) = match lower.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim().parse::<f64>().ok()?)),
        None => (lower.as_str(), None),
    };
    let (sign, num) = match num.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim()),
        None => (1.0, num),
    };
    let coeff = num.strip_suffix("pi")?.trim().trim_end_matches('*').trim();
    let coeff = if coeff.is_empty() {
        1.0
    } else {
        coeff.parse::<f64>().ok()?
    };
    let value = sign * coeff * std::f64::consts::PI / den.unwrap_or(1.0);
    value.is_finite().then_some(value)
}
