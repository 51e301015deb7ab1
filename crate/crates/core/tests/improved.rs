use std::f64::consts::{FRAC_PI_2, PI};

use barnesg::{
    exp_improved_log_barnes, log_barnes_oracle, stokes_profile, terminant, terminant_polar,
    Complex64, QuadraturePolicy, TruncationScheme,
};
use proptest::prelude::*;

fn oracle(z: Complex64) -> Complex64 {
    log_barnes_oracle(z, &QuadraturePolicy::default())
        .unwrap()
        .value
}

#[test]
fn transition_rises_monotonically() {
    let thetas: Vec<f64> = (0..=50)
        .map(|i| FRAC_PI_2 - 0.5 + 0.02 * i as f64)
        .collect();
    let profile = stokes_profile(3.0, 1, &thetas).unwrap();
    for w in profile.windows(2) {
        assert!(w[1].normalized.re >= w[0].normalized.re, "{:?}", w);
    }
    let limit = 1.0 / (2.0 * PI);
    for s in &profile {
        assert!(s.multiplier.norm() <= 1.5 * limit, "{:?}", s);
    }
    assert!(profile[0].normalized.re < 0.05);
    assert!(profile[50].normalized.re > 0.95);
}

#[test]
fn lower_half_plane_mirrors_upper() {
    let up: Vec<f64> = (0..=10)
        .map(|i| FRAC_PI_2 - 0.3 + 0.06 * i as f64)
        .collect();
    let down: Vec<f64> = up.iter().map(|t| -t).collect();
    let a = stokes_profile(2.5, 1, &up).unwrap();
    let b = stokes_profile(2.5, 1, &down).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((x.normalized - y.normalized.conj()).norm() < 1e-12);
        assert!((x.erf_prediction - y.erf_prediction).abs() < 1e-15);
    }
}

#[test]
fn profile_is_symmetric_about_the_line() {
    for i in 1..=15 {
        let d = 0.02 * i as f64;
        let s = stokes_profile(3.0, 1, &[FRAC_PI_2 + d, FRAC_PI_2 - d]).unwrap();
        let sum = s[0].normalized.re + s[1].normalized.re;
        assert!((sum - 1.0).abs() < 0.05, "δ = {d}: {sum}");
    }
}

#[test]
fn terminant_grows_by_one_per_sheet() {
    let w = Complex64::from_polar(12.0, 0.7);
    let base = terminant(7, w).unwrap().value;
    for m in [-2i32, -1, 1, 2] {
        let v = terminant_polar(7, 12.0, 0.7 + 2.0 * PI * m as f64)
            .unwrap()
            .value;
        assert!((v - base - m as f64).norm() < 1e-10, "m = {m}");
    }
}

#[test]
fn optimal_scheme_beats_plain_truncation_near_the_line() {
    for &a in &[0.45, 0.5, 0.55] {
        let z = Complex64::from_polar(2.5, a * PI);
        let exact = oracle(z);
        let n = (PI * 2.5f64).round() as usize;
        let plain = (barnesg::truncated_log_barnes(z, n).unwrap() - exact).norm();
        let v = exp_improved_log_barnes(z, &TruncationScheme::default()).unwrap();
        assert!((v.value - exact).norm() < 0.1 * plain, "arg = {a}π");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn improved_expansion_is_exact(
        r in 2.0f64..3.0,
        a in -0.9f64..0.9,
        n in 1usize..=4,
    ) {
        let z = Complex64::from_polar(r, a * PI);
        let v = exp_improved_log_barnes(z, &TruncationScheme::uniform(n, 40)).unwrap();
        let err = (v.value - oracle(z)).norm();
        prop_assert!(err <= 1e-9 + v.k_tail_estimate, "err {:e}, tail {:e}", err, v.k_tail_estimate);
    }

    #[test]
    fn schemes_agree(r in 2.0f64..3.5, a in -0.9f64..0.9, n in 1usize..=5) {
        let z = Complex64::from_polar(r, a * PI);
        let opt = exp_improved_log_barnes(z, &TruncationScheme::optimal(20)).unwrap();
        let uni = exp_improved_log_barnes(z, &TruncationScheme::uniform(n, 20)).unwrap();
        prop_assert!((opt.value - uni.value).norm() <= 1e-9);
    }
}
