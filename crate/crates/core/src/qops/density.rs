use std::ops::Deref;

use super::eigen::{check_hermitian, hermitian_eigensystem, EigenSystem};
use super::matrix::{ComplexMatrix4, DIM};
use crate::error::{Error, Result};

pub const DENSITY_HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues in `[-NEGATIVITY_TOL, 0)` are roundoff; below that the matrix is invalid.
pub const NEGATIVITY_TOL: f64 = 1e-10;
/// Eigenvalues at or below this contribute `0 log 0 = 0` to the entropy.
pub const ENTROPY_CUTOFF: f64 = 1e-12;

/// A validated two-qubit density matrix: Hermitian, unit trace, positive
/// semidefinite (all within the module tolerances).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4(ComplexMatrix4);

impl DensityMatrix4 {
    pub(crate) fn new_unchecked(m: ComplexMatrix4) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix4 {
        self.0
    }

    /// `I/4`.
    pub fn maximally_mixed() -> Self {
        Self(ComplexMatrix4::identity().scale_real(0.25))
    }

    /// `|k⟩⟨k|` for a computational basis index.
    pub fn basis_projector(k: usize) -> Self {
        let mut m = ComplexMatrix4::zeros();
        m[(k, k)] = super::matrix::ONE;
        Self(m)
    }

    /// Projector onto a normalized pure state.
    pub fn pure(psi: &[super::matrix::C64; DIM]) -> Result<Self> {
        validate_density_matrix(&ComplexMatrix4::outer(psi, psi))
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }

    /// Convex combination `w ρ + (1 - w) σ`, revalidated.
    pub fn mix(&self, other: &Self, w: f64) -> Result<Self> {
        validate_density_matrix(&(self.0.scale_real(w) + other.0.scale_real(1.0 - w)))
    }

    pub fn spectrum(&self) -> Result<[f64; DIM]> {
        Ok(hermitian_eigensystem(&self.0)?.values)
    }
}

impl Deref for DensityMatrix4 {
    type Target = ComplexMatrix4;

    fn deref(&self) -> &ComplexMatrix4 {
        &self.0
    }
}

impl AsRef<ComplexMatrix4> for DensityMatrix4 {
    fn as_ref(&self) -> &ComplexMatrix4 {
        &self.0
    }
}

/// Checks Hermiticity, unit trace and positivity, in that order, and re-tags
/// the matrix. No symmetrization is applied.
pub fn validate_density_matrix(m: &ComplexMatrix4) -> Result<DensityMatrix4> {
    check_hermitian(m, DENSITY_HERMITIAN_TOL)?;
    let trace = m.trace().re;
    let deviation = (trace - 1.0).abs();
    if deviation > TRACE_TOL || !deviation.is_finite() {
        return Err(Error::TraceDeviation { trace, deviation });
    }
    let es = hermitian_eigensystem(m)?;
    let lowest = es.values[0];
    if lowest < -NEGATIVITY_TOL {
        return Err(Error::NegativeEigenvalue { value: lowest });
    }
    Ok(DensityMatrix4(*m))
}

fn entropy_from_eigensystem(es: &EigenSystem) -> Result<f64> {
    let mut s = 0.0;
    for &lambda in &es.values {
        if lambda < -NEGATIVITY_TOL {
            return Err(Error::NegativeEigenvalue { value: lambda });
        }
        let lambda = lambda.max(0.0);
        if lambda > ENTROPY_CUTOFF {
            s -= lambda * lambda.log2();
        }
    }
    Ok(s)
}

/// Von Neumann entropy `-Tr ρ log₂ ρ` in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix4) -> Result<f64> {
    entropy_from_eigensystem(&hermitian_eigensystem(rho.matrix())?)
}
