//! Dense 4x4 complex linear algebra: Hermitian eigendecomposition,
//! density-matrix validation and von Neumann entropy.

mod density;
mod eigen;
mod matrix;

pub use density::{
    validate_density_matrix, von_neumann_entropy, DensityMatrix4, DENSITY_HERMITIAN_TOL,
    ENTROPY_CUTOFF, NEGATIVITY_TOL, TRACE_TOL,
};
pub use eigen::{
    check_hermitian, hermitian_eigensystem, EigenSystem, HERMITIAN_TOL, JACOBI_REL_TOL, MAX_SWEEPS,
};
pub use matrix::{ComplexMatrix4, C64, DIM};
pub(crate) use matrix::{ONE, ZERO};
