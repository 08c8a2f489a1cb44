//! Coherence as the quantum Jensen-Shannon distance between a state and its
//! dephased counterpart. Entropies are in bits, so distances lie in `[0, 1]`.

use crate::error::{Error, Result};
use crate::qops::{von_neumann_entropy, ComplexMatrix4, DensityMatrix4, DIM};

/// Negative radicands down to this size are clamped to zero.
pub const RADICAND_CLAMP: f64 = 1e-12;

/// Zeroes every off-diagonal entry in the computational product basis.
pub fn dephase(rho: &DensityMatrix4) -> DensityMatrix4 {
    let mut m = ComplexMatrix4::zeros();
    for i in 0..DIM {
        m[(i, i)] = rho.matrix()[(i, i)];
    }
    // The diagonal of a valid density matrix is itself valid.
    DensityMatrix4::new_unchecked(m)
}

/// Quantum Jensen-Shannon divergence `S((ρ+σ)/2) - S(ρ)/2 - S(σ)/2`, clamped
/// at zero within [`RADICAND_CLAMP`].
pub fn jensen_shannon_divergence(rho: &DensityMatrix4, sigma: &DensityMatrix4) -> Result<f64> {
    // (a + b)/2 and (b + a)/2 round identically, which keeps the result
    // exactly symmetric.
    let mid = rho.mix(sigma, 0.5)?;
    let s_mid = von_neumann_entropy(&mid)?;
    let s_rho = von_neumann_entropy(rho)?;
    let s_sigma = von_neumann_entropy(sigma)?;
    let radicand = s_mid - 0.5 * (s_rho + s_sigma);
    if radicand >= 0.0 {
        Ok(radicand)
    } else if radicand >= -RADICAND_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::NegativeRadicand { value: radicand })
    }
}

/// `√J(ρ, σ)`, a metric on density matrices.
pub fn jsd_distance(rho: &DensityMatrix4, sigma: &DensityMatrix4) -> Result<f64> {
    jensen_shannon_divergence(rho, sigma).map(f64::sqrt)
}

/// `C(ρ) = D(ρ, ρ_d)`.
pub fn coherence(rho: &DensityMatrix4) -> Result<f64> {
    jsd_distance(rho, &dephase(rho))
}

/// `C(ρ)²`, the radicand itself.
pub fn coherence_squared(rho: &DensityMatrix4) -> Result<f64> {
    jensen_shannon_divergence(rho, &dephase(rho))
}
