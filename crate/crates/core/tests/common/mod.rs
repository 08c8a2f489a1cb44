#![allow(dead_code)]

use dipcoh_core::qops::{hermitian_eigensystem, validate_density_matrix};
use dipcoh_core::{ComplexMatrix4, DensityMatrix4, ModelParams, C64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut TestRng, scale: f64) -> C64 {
    C64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

pub fn random_hermitian(rng: &mut TestRng, scale: f64) -> ComplexMatrix4 {
    let mut h = ComplexMatrix4::zeros();
    for i in 0..4 {
        h[(i, i)] = C64::new(rng.gen_range(-scale..scale), 0.0);
        for j in i + 1..4 {
            let z = random_complex(rng, scale);
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    h
}

/// Random unitary from the eigenvectors of a random Hermitian matrix.
pub fn random_unitary(rng: &mut TestRng) -> ComplexMatrix4 {
    hermitian_eigensystem(&random_hermitian(rng, 1.0))
        .unwrap()
        .vector_matrix()
}

/// `A A† / Tr(A A†)` for a random `4 x rank` matrix `A`.
pub fn random_density(rng: &mut TestRng) -> DensityMatrix4 {
    let rank = rng.gen_range(1..=4);
    let mut a = ComplexMatrix4::zeros();
    for i in 0..4 {
        for j in 0..rank {
            a[(i, j)] = random_complex(rng, 1.0);
        }
    }
    let m = a * a.adjoint();
    let tr = m.trace().re;
    let mut m = m.scale_real(1.0 / tr);
    // Enforce exact Hermiticity of the generated sample.
    for i in 0..4 {
        m[(i, i)] = C64::new(m[(i, i)].re, 0.0);
        for j in i + 1..4 {
            m[(j, i)] = m[(i, j)].conj();
        }
    }
    validate_density_matrix(&m).unwrap()
}

pub fn random_params(rng: &mut TestRng) -> ModelParams {
    ModelParams::new(
        rng.gen_range(-2.0..2.0),
        rng.gen_range(0.0..3.0),
        rng.gen_range(0.2..3.0),
        rng.gen_range(-3.0..3.0),
    )
    .unwrap()
}
