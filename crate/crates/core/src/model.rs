//! Two-qubit isotropic Heisenberg (XXX) Hamiltonian with dipole-dipole
//! coupling and a longitudinal field, and its closed-form eigensystem.
//!
//! Basis order is `|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩` throughout. With `ħ = 1` every
//! quantity is dimensionless; the spin separation `r` only enters through
//! `r³` and `r⁶`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{invalid, Result};
use crate::qops::{ComplexMatrix4, EigenSystem, C64, DIM, ONE, ZERO};

/// Physical parameters of the Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Exchange coupling `J`.
    pub j: f64,
    /// Dipole strength `D ≥ 0`.
    pub d: f64,
    /// Spin separation `r > 0`.
    pub r: f64,
    /// Longitudinal field `B_z`.
    pub bz: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            j: 1.0,
            d: 0.5,
            r: 0.5,
            bz: 1.0,
        }
    }
}

impl ModelParams {
    pub fn new(j: f64, d: f64, r: f64, bz: f64) -> Result<Self> {
        let p = Self { j, d, r, bz };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("J", self.j), ("D", self.d), ("r", self.r), ("Bz", self.bz)] {
            if !v.is_finite() {
                return Err(invalid(name, v, "must be finite"));
            }
        }
        if self.r <= 0.0 {
            return Err(invalid("r", self.r, "must be > 0"));
        }
        if self.d < 0.0 {
            return Err(invalid("D", self.d, "must be >= 0"));
        }
        Ok(())
    }

    pub fn r3(&self) -> f64 {
        self.r * self.r * self.r
    }

    /// `D / (2 r³)`.
    fn half_dipole(&self) -> f64 {
        self.d / (2.0 * self.r3())
    }

    /// Below this `D` the `|↑↑⟩, |↓↓⟩` block is treated as already diagonal.
    pub fn dipole_branch_threshold(&self) -> f64 {
        1e-13 * f64::max(1.0, self.bz.abs() * self.r3())
    }
}

/// Quantities derived from the parameters that parameterize the upper/lower
/// `|↑↑⟩, |↓↓⟩` eigenvectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities {
    /// `√(9D² + 4B_z² r⁶)`.
    pub tau: f64,
    /// Effective corner coupling `3D / (2r³)`.
    pub d_eff: f64,
    /// `√(B_z² + d_eff²)`, half the gap `E₄ - E₃`.
    pub m_eff: f64,
    /// `(2 B_z r³ + τ) / 3D`; `+∞` when singular.
    pub delta: f64,
    /// `(2 B_z r³ - τ) / 3D`; `-∞` when singular.
    pub epsilon: f64,
    /// Set when `D` is below the limit-branch threshold.
    pub singular: bool,
}

pub fn derived_quantities(p: &ModelParams) -> Result<DerivedQuantities> {
    p.validate()?;
    let r3 = p.r3();
    let tau = (9.0 * p.d * p.d + 4.0 * p.bz * p.bz * r3 * r3).sqrt();
    let d_eff = 3.0 * p.d / (2.0 * r3);
    let m_eff = p.bz.hypot(d_eff);
    let singular = p.d < p.dipole_branch_threshold();
    let (delta, epsilon) = if singular {
        (f64::INFINITY, f64::NEG_INFINITY)
    } else if p.bz >= 0.0 {
        // δ has no cancellation here; δ ε = -1 supplies ε.
        let delta = (p.bz + m_eff) / d_eff;
        (delta, -1.0 / delta)
    } else {
        let epsilon = (p.bz - m_eff) / d_eff;
        (-1.0 / epsilon, epsilon)
    };
    Ok(DerivedQuantities {
        tau,
        d_eff,
        m_eff,
        delta,
        epsilon,
        singular,
    })
}

/// The Hamiltonian matrix in the computational basis. All entries are real.
pub fn build_hamiltonian(p: &ModelParams) -> Result<ComplexMatrix4> {
    p.validate()?;
    let hd = p.half_dipole();
    let half_j = 0.5 * p.j;
    let mut h = [[0.0; DIM]; DIM];
    h[0][0] = -p.bz - half_j + hd;
    h[1][1] = half_j - hd;
    h[2][2] = half_j - hd;
    h[3][3] = p.bz - half_j + hd;
    h[1][2] = -p.j - hd;
    h[2][1] = -p.j - hd;
    h[0][3] = -3.0 * hd;
    h[3][0] = -3.0 * hd;
    ComplexMatrix4::from_real(h)
}

/// One labelled level `E_k, |φ_k⟩` with the conventional numbering
/// (`k = 1` singlet, `k = 2` inner triplet, `k = 3, 4` outer block).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub label: usize,
    pub energy: f64,
    pub vector: [C64; DIM],
}

/// The four levels in label order `E₁..E₄`.
pub fn closed_form_levels(p: &ModelParams) -> Result<[Level; DIM]> {
    let dq = derived_quantities(p)?;
    let r3 = p.r3();
    let s = C64::new(FRAC_1_SQRT_2, 0.0);

    let e1 = 1.5 * p.j;
    let e2 = (-2.0 * p.d - p.j * r3) / (2.0 * r3);
    let e3 = (p.d - p.j * r3 - dq.tau) / (2.0 * r3);
    let e4 = (p.d - p.j * r3 + dq.tau) / (2.0 * r3);

    let up_up = [ONE, ZERO, ZERO, ZERO];
    let down_down = [ZERO, ZERO, ZERO, ONE];
    let (v3, v4) = if dq.singular {
        if p.bz >= 0.0 {
            (up_up, down_down)
        } else {
            (down_down, up_up)
        }
    } else {
        (outer_vector(dq.delta), outer_vector(dq.epsilon))
    };

    Ok([
        Level {
            label: 1,
            energy: e1,
            vector: [ZERO, -s, s, ZERO],
        },
        Level {
            label: 2,
            energy: e2,
            vector: [ZERO, s, s, ZERO],
        },
        Level {
            label: 3,
            energy: e3,
            vector: v3,
        },
        Level {
            label: 4,
            energy: e4,
            vector: v4,
        },
    ])
}

/// Normalized `(x|↑↑⟩ + |↓↓⟩) / √(x² + 1)`.
fn outer_vector(x: f64) -> [C64; DIM] {
    let norm = x.hypot(1.0);
    [
        C64::new(x / norm, 0.0),
        ZERO,
        ZERO,
        C64::new(1.0 / norm, 0.0),
    ]
}

/// Closed-form eigensystem, sorted by ascending energy.
pub fn eigensystem_closed_form(p: &ModelParams) -> Result<EigenSystem> {
    let levels = closed_form_levels(p)?;
    Ok(EigenSystem::sorted(
        levels.map(|l| l.energy),
        levels.map(|l| l.vector),
    ))
}
