mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use common::*;
use dipcoh_core::analysis::{steady_coherence_squared, uniform_times};
use dipcoh_core::{
    derived_quantities, fd_partial_c2, steady_coherence, time_series, EvolutionSpec, ModelParams,
    Parameter,
};
use rand::Rng;

/// Central differences are second order: with a Richardson-extrapolated
/// reference, halving the step cuts the error by about four.
#[test]
fn central_difference_converges_at_second_order() {
    let p = ModelParams::default();
    let cases = [
        (Parameter::D, p, FRAC_PI_3, 0.02),
        (Parameter::R, p, FRAC_PI_3, 0.01),
        (Parameter::Bz, p, FRAC_PI_3, 0.05),
        (Parameter::Alpha, p, 0.7, 0.02),
    ];
    for (target, params, alpha, h0) in cases {
        let d = |h: f64| fd_partial_c2(&params, alpha, target, Some(h)).unwrap();
        let (d1, d2, d3) = (d(h0), d(h0 / 2.0), d(h0 / 4.0));
        let reference = d3 + (d3 - d2) / 3.0;
        let ratio = (d1 - reference) / (d2 - reference);
        assert!(
            (3.5..=4.5).contains(&ratio),
            "{target}: error ratio {ratio} ({d1}, {d2}, {d3})"
        );
    }
}

#[test]
fn steady_coherence_mirror_symmetry_in_alpha() {
    let p = ModelParams::default();
    for k in 0..=50 {
        let alpha = FRAC_PI_2 * k as f64 / 50.0;
        let a = steady_coherence_squared(&p, alpha).unwrap();
        let b = steady_coherence_squared(&p, PI - alpha).unwrap();
        assert!((a - b).abs() <= 1e-12, "alpha = {alpha}: {a} vs {b}");
    }
}

#[test]
fn late_time_series_reaches_steady_value() {
    let mut rng = rng(0x5eed_0401);
    for _ in 0..30 {
        let params = ModelParams::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(0.05..2.0),
            rng.gen_range(0.3..2.0),
            rng.gen_range(-2.0..2.0),
        )
        .unwrap();
        let gamma = rng.gen_range(0.02..0.3);
        let alpha = rng.gen_range(0.0..PI);
        let m = derived_quantities(&params).unwrap().m_eff;
        let spec = EvolutionSpec {
            params,
            gamma,
            alpha,
            times: vec![1e3 / (gamma * m * m)],
        };
        let late = time_series(&spec).unwrap()[0].c;
        let steady = steady_coherence(&params, alpha).unwrap();
        assert!((late - steady).abs() <= 1e-6);
    }
}

#[test]
fn unitary_limit_has_no_decay_envelope() {
    let params = ModelParams::default();
    let m = derived_quantities(&params).unwrap().m_eff;
    let period = PI / m;
    let spec = EvolutionSpec {
        params,
        gamma: 0.0,
        alpha: FRAC_PI_3,
        times: uniform_times(40.0 * period, 4001),
    };
    let series = time_series(&spec).unwrap();
    // Same phase samples one period apart carry the same coherence.
    let per_period = 100;
    for k in 0..series.len() - per_period {
        let a = series[k].c;
        let b = series[k + per_period].c;
        assert!((a - b).abs() <= 1e-8, "t = {}", series[k].t);
    }
    let early = series[..400].iter().map(|p| p.c).fold(0.0, f64::max);
    let late = series[3600..].iter().map(|p| p.c).fold(0.0, f64::max);
    assert!((early - late).abs() <= 1e-8);
}
