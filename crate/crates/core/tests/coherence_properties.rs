mod common;

use common::*;
use dipcoh_core::qops::validate_density_matrix;
use dipcoh_core::{coherence, coherence_squared, dephase, jsd_distance, ComplexMatrix4, C64};
use rand::Rng;

#[test]
fn distance_is_exactly_symmetric_and_bounded() {
    let mut rng = rng(0x5eed_0301);
    for _ in 0..300 {
        let a = random_density(&mut rng);
        let b = random_density(&mut rng);
        let ab = jsd_distance(&a, &b).unwrap();
        let ba = jsd_distance(&b, &a).unwrap();
        assert_eq!(ab.to_bits(), ba.to_bits());
        assert!((0.0..=1.0 + 1e-12).contains(&ab));
    }
}

#[test]
fn triangle_inequality() {
    let mut rng = rng(0x5eed_0302);
    for _ in 0..500 {
        let r = random_density(&mut rng);
        let s = random_density(&mut rng);
        let t = random_density(&mut rng);
        let direct = jsd_distance(&r, &t).unwrap();
        let via = jsd_distance(&r, &s).unwrap() + jsd_distance(&s, &t).unwrap();
        assert!(direct <= via + 1e-10);
    }
}

#[test]
fn coherence_vanishes_exactly_on_diagonal_states() {
    let mut rng = rng(0x5eed_0303);
    for _ in 0..200 {
        let rho = random_density(&mut rng);
        let c = coherence(&rho).unwrap();
        assert!(rho.max_off_diagonal() > 1e-10);
        assert!(c > 0.0);
        let d = dephase(&rho);
        assert_eq!(coherence(&d).unwrap(), 0.0);
        assert!((coherence_squared(&rho).unwrap() - c * c).abs() <= 1e-12);
    }
}

#[test]
fn coherence_is_invariant_under_diagonal_phases() {
    let mut rng = rng(0x5eed_0304);
    for _ in 0..200 {
        let rho = random_density(&mut rng);
        let mut u = ComplexMatrix4::zeros();
        for i in 0..4 {
            u[(i, i)] = C64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        }
        let rotated = u * *rho.matrix() * u.adjoint();
        let mut herm = rotated;
        for i in 0..4 {
            herm[(i, i)].im = 0.0;
            for j in i + 1..4 {
                herm[(j, i)] = rotated[(i, j)].conj();
            }
        }
        let rotated = validate_density_matrix(&herm).unwrap();
        let c0 = coherence(&rho).unwrap();
        let c1 = coherence(&rotated).unwrap();
        assert!((c0 - c1).abs() <= 1e-10);
    }
}
