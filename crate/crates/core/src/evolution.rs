//! Density-matrix dynamics under Milburn's intrinsic-decoherence master
//! equation
//!
//! ```text
//! dρ/dt = -i[H, ρ] - (γ/2)[H, [H, ρ]]
//! ```
//!
//! The production propagator works in the energy eigenbasis, where the
//! coherence `⟨φ_m|ρ|φ_n⟩` picks up the factor
//! `exp(-γt(E_m - E_n)²/2 - i(E_m - E_n)t)`. An independent fourth-order
//! Runge-Kutta integrator of the master equation serves as a cross-check.
//! Time arguments are absolute: every state is evolved from `t = 0`.

use crate::error::{invalid, Error, Result};
use crate::model::{build_hamiltonian, derived_quantities, eigensystem_closed_form, ModelParams};
use crate::qops::{
    hermitian_eigensystem, validate_density_matrix, ComplexMatrix4, DensityMatrix4, EigenSystem,
    C64, DIM,
};

/// Energy gaps at or below this are treated as exact degeneracies: no
/// damping and no phase.
pub const DEGENERACY_TOL: f64 = 1e-12;
/// Upper bound on Runge-Kutta steps for the stepped integrator.
pub const MAX_RK4_STEPS: u64 = 10_000_000;

/// Parameters of one evolution run.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionSpec {
    pub params: ModelParams,
    /// Intrinsic-decoherence rate `γ ≥ 0`.
    pub gamma: f64,
    /// Initial-state mixing angle in `[0, π]`.
    pub alpha: f64,
    /// Ascending, nonnegative evaluation times.
    pub times: Vec<f64>,
}

impl EvolutionSpec {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        check_gamma(self.gamma)?;
        check_alpha(self.alpha)?;
        let mut prev = 0.0;
        for &t in &self.times {
            check_time(t)?;
            if t < prev {
                return Err(invalid("t", t, "time grid must be ascending"));
            }
            prev = t;
        }
        Ok(())
    }
}

pub(crate) fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma.is_finite() && gamma >= 0.0) {
        return Err(invalid("gamma", gamma, "must be finite and >= 0"));
    }
    Ok(())
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::PI).contains(&alpha) {
        return Err(invalid("alpha", alpha, "must lie in [0, pi]"));
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(invalid("t", t, "must be finite and >= 0"));
    }
    Ok(())
}

/// `cos²α |ψ⁺⟩⟨ψ⁺| + sin²α |φ⁺⟩⟨φ⁺|` with `|ψ⁺⟩ = (|↑↑⟩ + |↓↓⟩)/√2` and
/// `|φ⁺⟩ = (|↑↓⟩ + |↓↑⟩)/√2`.
pub fn initial_state(alpha: f64) -> Result<DensityMatrix4> {
    check_alpha(alpha)?;
    let outer = 0.5 * alpha.cos().powi(2);
    let inner = 0.5 * alpha.sin().powi(2);
    let mut m = ComplexMatrix4::zeros();
    for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
        m[(i, j)] = C64::new(outer, 0.0);
    }
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        m[(i, j)] = C64::new(inner, 0.0);
    }
    validate_density_matrix(&m)
}

/// Where the propagator takes its eigensystem from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EigenSource {
    #[default]
    ClosedForm,
    /// Jacobi diagonalization of the assembled Hamiltonian.
    Numeric,
}

/// Spectral propagator bound to one Hamiltonian.
#[derive(Debug, Clone)]
pub struct SpectralPropagator {
    eigen: EigenSystem,
    basis: ComplexMatrix4,
}

impl SpectralPropagator {
    pub fn new(p: &ModelParams, source: EigenSource) -> Result<Self> {
        let eigen = match source {
            EigenSource::ClosedForm => eigensystem_closed_form(p)?,
            EigenSource::Numeric => hermitian_eigensystem(&build_hamiltonian(p)?)?,
        };
        Ok(Self::from_eigensystem(eigen))
    }

    pub fn from_eigensystem(eigen: EigenSystem) -> Self {
        let basis = eigen.vector_matrix();
        Self { eigen, basis }
    }

    pub fn eigensystem(&self) -> &EigenSystem {
        &self.eigen
    }

    /// Matrix of `⟨φ_m|ρ|φ_n⟩`.
    pub fn to_energy_basis(&self, rho: &ComplexMatrix4) -> ComplexMatrix4 {
        self.basis.adjoint() * *rho * self.basis
    }

    pub fn from_energy_basis(&self, c: &ComplexMatrix4) -> ComplexMatrix4 {
        self.basis * *c * self.basis.adjoint()
    }

    fn weighted(
        &self,
        rho0: &DensityMatrix4,
        factor: impl Fn(f64) -> C64,
    ) -> Result<DensityMatrix4> {
        let mut c = self.to_energy_basis(rho0.matrix());
        let e = &self.eigen.values;
        for m in 0..DIM {
            for n in 0..DIM {
                let gap = e[m] - e[n];
                if gap.abs() > DEGENERACY_TOL {
                    c[(m, n)] *= factor(gap);
                }
            }
        }
        validate_density_matrix(&self.from_energy_basis(&c))
    }

    /// State at absolute time `t`.
    pub fn evolve(&self, gamma: f64, rho0: &DensityMatrix4, t: f64) -> Result<DensityMatrix4> {
        check_gamma(gamma)?;
        check_time(t)?;
        self.weighted(rho0, |gap| {
            let damping = (-0.5 * gamma * t * gap * gap).exp();
            C64::from_polar(damping, -gap * t)
        })
    }

    /// `t → ∞` limit for `γ > 0`: keeps only the degenerate-energy blocks.
    pub fn stationary(&self, rho0: &DensityMatrix4) -> Result<DensityMatrix4> {
        self.weighted(rho0, |_| C64::new(0.0, 0.0))
    }
}

/// Spectral solution of the master equation using the closed-form eigensystem.
pub fn evolve_spectral(
    p: &ModelParams,
    gamma: f64,
    rho0: &DensityMatrix4,
    t: f64,
) -> Result<DensityMatrix4> {
    SpectralPropagator::new(p, EigenSource::ClosedForm)?.evolve(gamma, rho0, t)
}

/// Stationary state reached from the initial state with mixing angle `alpha`.
pub fn steady_state(p: &ModelParams, alpha: f64) -> Result<DensityMatrix4> {
    let rho0 = initial_state(alpha)?;
    SpectralPropagator::new(p, EigenSource::ClosedForm)?.stationary(&rho0)
}

/// Closed-form matrix elements of the evolved state for the Bell-mixture
/// initial state.
///
/// The `|φ⁺⟩` block is stationary. The `|↑↑⟩, |↓↓⟩` block behaves as a
/// two-level system with splitting `2m` (`m = √(B_z² + d²)`,
/// `d = 3D/(2r³)`), whose transverse Bloch components precess at `2m` and
/// decay at `2γm²`.
pub fn closed_form_elements(
    p: &ModelParams,
    gamma: f64,
    alpha: f64,
    t: f64,
) -> Result<DensityMatrix4> {
    check_gamma(gamma)?;
    check_time(t)?;
    let rho0 = initial_state(alpha)?;
    let dq = derived_quantities(p)?;
    let m = dq.m_eff;
    if m == 0.0 {
        return Ok(rho0);
    }
    let d = dq.d_eff;
    let bz = p.bz;
    let w = alpha.cos().powi(2);
    let m2 = m * m;
    let decay = (-2.0 * m2 * gamma * t).exp();
    let (sin, cos) = (2.0 * m * t).sin_cos();

    let shift = bz * d * (1.0 - decay * cos);
    let rho11 = w * (m2 + shift) / (2.0 * m2);
    let rho44 = w * (m2 - shift) / (2.0 * m2);
    let rho14 = C64::new(d * d + bz * bz * decay * cos, bz * m * decay * sin) * (w / (2.0 * m2));

    let mut out = *rho0.matrix();
    out[(0, 0)] = C64::new(rho11, 0.0);
    out[(3, 3)] = C64::new(rho44, 0.0);
    out[(0, 3)] = rho14;
    out[(3, 0)] = rho14.conj();
    validate_density_matrix(&out)
}

// Stepped integrator. States are carried as 16 real coordinates of a
// Hermitian matrix (real diagonal, then real and imaginary parts of the
// upper triangle), so every iterate is Hermitian by construction.

const NCOORD: usize = DIM * DIM;
type Coords = [f64; NCOORD];
type StepMap = [[f64; NCOORD]; NCOORD];

fn upper_pairs() -> impl Iterator<Item = (usize, usize)> {
    (0..DIM).flat_map(|i| (i + 1..DIM).map(move |j| (i, j)))
}

fn to_coords(m: &ComplexMatrix4) -> Coords {
    let mut x = [0.0; NCOORD];
    for i in 0..DIM {
        x[i] = m[(i, i)].re;
    }
    for (k, (i, j)) in upper_pairs().enumerate() {
        x[DIM + 2 * k] = m[(i, j)].re;
        x[DIM + 2 * k + 1] = m[(i, j)].im;
    }
    x
}

fn from_coords(x: &Coords) -> ComplexMatrix4 {
    let mut m = ComplexMatrix4::zeros();
    for i in 0..DIM {
        m[(i, i)] = C64::new(x[i], 0.0);
    }
    for (k, (i, j)) in upper_pairs().enumerate() {
        let z = C64::new(x[DIM + 2 * k], x[DIM + 2 * k + 1]);
        m[(i, j)] = z;
        m[(j, i)] = z.conj();
    }
    m
}

fn master_rhs(h: &ComplexMatrix4, gamma: f64, rho: &ComplexMatrix4) -> ComplexMatrix4 {
    let c = h.commutator(rho);
    c.scale(C64::new(0.0, -1.0)) - h.commutator(&c).scale_real(0.5 * gamma)
}

fn rk4_step(h: &ComplexMatrix4, gamma: f64, rho: &ComplexMatrix4, dt: f64) -> ComplexMatrix4 {
    let k1 = master_rhs(h, gamma, rho);
    let k2 = master_rhs(h, gamma, &(*rho + k1.scale_real(0.5 * dt)));
    let k3 = master_rhs(h, gamma, &(*rho + k2.scale_real(0.5 * dt)));
    let k4 = master_rhs(h, gamma, &(*rho + k3.scale_real(dt)));
    *rho + (k1 + k2.scale_real(2.0) + k3.scale_real(2.0) + k4).scale_real(dt / 6.0)
}

/// The master equation is linear, so one RK4 step is a fixed linear map on
/// the coordinates. Column `c` is the step applied to basis element `c`.
fn rk4_step_map(h: &ComplexMatrix4, gamma: f64, dt: f64) -> StepMap {
    let mut map = [[0.0; NCOORD]; NCOORD];
    for c in 0..NCOORD {
        let mut e = [0.0; NCOORD];
        e[c] = 1.0;
        let stepped = to_coords(&rk4_step(h, gamma, &from_coords(&e), dt));
        for r in 0..NCOORD {
            map[r][c] = stepped[r];
        }
    }
    map
}

fn compose(a: &StepMap, b: &StepMap) -> StepMap {
    let mut out = [[0.0; NCOORD]; NCOORD];
    for i in 0..NCOORD {
        for k in 0..NCOORD {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..NCOORD {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

fn apply(a: &StepMap, x: &Coords) -> Coords {
    let mut out = [0.0; NCOORD];
    for (o, row) in out.iter_mut().zip(a) {
        *o = row.iter().zip(x).map(|(r, v)| r * v).sum();
    }
    out
}

/// `2^doublings` RK4 steps of size `t / 2^doublings`.
fn rk4_power_of_two(
    h: &ComplexMatrix4,
    gamma: f64,
    rho0: &Coords,
    t: f64,
    doublings: u32,
) -> Coords {
    let steps = (1u64 << doublings) as f64;
    let mut map = rk4_step_map(h, gamma, t / steps);
    for _ in 0..doublings {
        map = compose(&map, &map);
    }
    apply(&map, rho0)
}

/// Integrates the master equation with classical RK4, halving the step until
/// two successive results differ by less than `tol` (max-abs entry).
///
/// Step counts are powers of two; `2^k` steps are composed from the
/// single-step map by repeated squaring. No trace renormalization is done.
pub fn evolve_stepped_oracle(
    p: &ModelParams,
    gamma: f64,
    rho0: &DensityMatrix4,
    t: f64,
    tol: f64,
) -> Result<DensityMatrix4> {
    check_gamma(gamma)?;
    check_time(t)?;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(invalid("tol", tol, "must be finite and > 0"));
    }
    if t == 0.0 {
        return Ok(*rho0);
    }
    let h = build_hamiltonian(p)?;
    let x0 = to_coords(rho0.matrix());

    // Start where |dt| times a bound on the generator norm is at most 1/2.
    let hn = h.frobenius_norm();
    let generator_bound = 2.0 * hn + 2.0 * gamma * hn * hn;
    let min_steps = (2.0 * t * generator_bound).max(1.0);
    let mut doublings = min_steps.log2().ceil() as u32;
    let cap_doublings = (MAX_RK4_STEPS as f64).log2().floor() as u32;
    if doublings > cap_doublings {
        return Err(Error::StepLimit {
            steps: 1u64 << doublings,
            cap: MAX_RK4_STEPS,
        });
    }

    let mut prev = rk4_power_of_two(&h, gamma, &x0, t, doublings);
    loop {
        doublings += 1;
        if doublings > cap_doublings {
            return Err(Error::StepLimit {
                steps: 1u64 << doublings,
                cap: MAX_RK4_STEPS,
            });
        }
        let next = rk4_power_of_two(&h, gamma, &x0, t, doublings);
        let change = from_coords(&next).max_abs_diff(&from_coords(&prev));
        prev = next;
        if change < tol {
            break;
        }
    }
    validate_density_matrix(&from_coords(&prev))
}
