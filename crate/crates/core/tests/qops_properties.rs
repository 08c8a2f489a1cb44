mod common;

use common::*;
use dipcoh_core::qops::{hermitian_eigensystem, validate_density_matrix, von_neumann_entropy};
use dipcoh_core::ComplexMatrix4;
use proptest::prelude::*;

#[test]
fn jacobi_bounds_on_random_hermitian_matrices() {
    let mut rng = rng(0x5eed_0001);
    for _ in 0..1000 {
        let h = random_hermitian(&mut rng, 5.0);
        let es = hermitian_eigensystem(&h).unwrap();
        let scale = 1.0 + h.frobenius_norm();
        assert!(es.orthonormality_error() <= 1e-10);
        assert!(es.max_residual(&h) <= 1e-10 * scale);
        assert!(es.values.windows(2).all(|w| w[0] <= w[1]));
        assert!(es.reconstruct().max_abs_diff(&h) <= 1e-12 * scale);
    }
}

#[test]
fn jacobi_is_deterministic() {
    let mut rng = rng(7);
    let h = random_hermitian(&mut rng, 2.0);
    assert_eq!(
        hermitian_eigensystem(&h).unwrap(),
        hermitian_eigensystem(&h).unwrap()
    );
}

#[test]
fn entropy_is_unitarily_invariant() {
    let mut rng = rng(0x5eed_0002);
    for _ in 0..200 {
        let rho = random_density(&mut rng);
        let u = random_unitary(&mut rng);
        let rotated = u * *rho.matrix() * u.adjoint();
        let mut rotated_h = rotated;
        for i in 0..4 {
            rotated_h[(i, i)].im = 0.0;
            for j in i + 1..4 {
                rotated_h[(j, i)] = rotated[(i, j)].conj();
            }
        }
        let rotated = validate_density_matrix(&rotated_h).unwrap();
        let s0 = von_neumann_entropy(&rho).unwrap();
        let s1 = von_neumann_entropy(&rotated).unwrap();
        assert!((s0 - s1).abs() <= 1e-10, "{s0} vs {s1}");
    }
}

#[test]
fn entropy_is_concave() {
    let mut rng = rng(0x5eed_0003);
    for _ in 0..300 {
        let rho = random_density(&mut rng);
        let sigma = random_density(&mut rng);
        let mid = rho.mix(&sigma, 0.5).unwrap();
        let lhs = von_neumann_entropy(&mid).unwrap();
        let rhs =
            0.5 * von_neumann_entropy(&rho).unwrap() + 0.5 * von_neumann_entropy(&sigma).unwrap();
        assert!(lhs >= rhs - 1e-12);
        assert!((0.0..=2.0 + 1e-12).contains(&lhs));
    }
}

proptest! {
    #[test]
    fn diagonal_input_is_returned_exactly(d in prop::array::uniform4(-10.0f64..10.0)) {
        let es = hermitian_eigensystem(&ComplexMatrix4::from_diagonal(d).unwrap()).unwrap();
        let mut sorted = d;
        sorted.sort_by(f64::total_cmp);
        prop_assert_eq!(es.values, sorted);
    }

    #[test]
    fn scaled_identity_has_flat_spectrum(s in -100.0f64..100.0) {
        let es = hermitian_eigensystem(&ComplexMatrix4::identity().scale_real(s)).unwrap();
        prop_assert_eq!(es.values, [s; 4]);
    }
}
