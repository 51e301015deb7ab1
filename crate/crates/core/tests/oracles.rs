use std::f64::consts::PI;

use barnesg::{
    bernoulli_poly, log_barnes_oracle, log_gamma, remainder_double_integral, remainder_narrow,
    remainder_wide, remainder_wide_with, truncated_log_barnes, Complex64, QuadraturePolicy,
    WideForm,
};
use proptest::prelude::*;

/// `log G(n+1) = Σ_{k<n} log k!`.
fn log_barnes_at_integer(n: u32) -> f64 {
    (1..n)
        .map(|k| (1..=k).map(|j| (j as f64).ln()).sum::<f64>())
        .sum()
}

#[test]
fn integers_reproduce_superfactorials() {
    let policy = QuadraturePolicy::default();
    for n in 1..=12 {
        let v = log_barnes_oracle(Complex64::new(n as f64, 0.0), &policy).unwrap();
        let exact = log_barnes_at_integer(n);
        assert!(
            (v.value.re - exact).abs() < 1e-12 * exact.max(1.0),
            "n = {n}"
        );
        assert!(v.est_error < 1e-10);
    }
}

#[test]
fn small_moduli_are_shifted_outward() {
    let policy = QuadraturePolicy::default();
    let z = Complex64::new(0.3, 0.2);
    let a = log_barnes_oracle(z, &policy).unwrap().value;
    let b = log_barnes_oracle(z + 1.0, &policy).unwrap().value - log_gamma(z + 1.0).unwrap();
    assert!((a - b).norm() < 1e-12);
    assert!(
        log_barnes_oracle(Complex64::new(0.0, 0.0), &policy)
            .unwrap()
            .value
            .norm()
            < 1e-13
    );
}

#[test]
fn wide_kernels_keep_their_sign() {
    for n in 1..=3 {
        let b = bernoulli_poly(2 * n + 2, 0.0).unwrap();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        for i in 0..=300 {
            let frac = (i as f64 * 0.01).fract();
            let x = bernoulli_poly(2 * n + 2, frac).unwrap();
            assert!(sign * (b + x) >= 0.0, "n = {n}, t = {}", i as f64 * 0.01);
            assert!(sign * (b - x) >= -1e-15, "n = {n}, t = {}", i as f64 * 0.01);
        }
    }
}

#[test]
fn finer_rules_move_less_than_the_estimate() {
    let coarse = QuadraturePolicy::default();
    let fine = QuadraturePolicy {
        nodes_per_interval: 2 * coarse.nodes_per_interval,
        ..coarse
    };
    for &(r, a) in &[(2.0, 0.1), (4.0, 0.4), (6.0, -0.3)] {
        let z = Complex64::from_polar(r, a * PI);
        for n in 1..=3 {
            let c = remainder_narrow(z, n, &coarse).unwrap();
            let f = remainder_narrow(z, n, &fine).unwrap();
            assert!((c.value - f.value).norm() <= c.est_error.max(1e-15 * c.value.norm()));
            let c = remainder_wide(z, n, &coarse).unwrap();
            let f = remainder_wide(z, n, &fine).unwrap();
            assert!((c.value - f.value).norm() <= c.est_error.max(1e-15 * c.value.norm()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn narrow_and_wide_representations_agree(
        r in 2.0f64..12.0,
        a in -0.45f64..0.45,
        n in 1usize..=3,
    ) {
        let policy = QuadraturePolicy::default();
        let z = Complex64::from_polar(r, a * PI);
        let narrow = remainder_narrow(z, n, &policy).unwrap().value;
        let wide = remainder_wide(z, n, &policy).unwrap().value;
        let shifted = remainder_wide_with(z, n, &policy, WideForm::ShiftedBernoulli).unwrap().value;
        prop_assert!((narrow - wide).norm() <= 1e-10);
        prop_assert!((narrow - shifted).norm() <= 1e-10);
    }

    #[test]
    fn double_integral_agrees(r in 2.0f64..6.0, a in -0.4f64..0.4) {
        let policy = QuadraturePolicy::default();
        let z = Complex64::from_polar(r, a * PI);
        let d = remainder_double_integral(z, 1, &policy).unwrap().value;
        let narrow = remainder_narrow(z, 1, &policy).unwrap().value;
        prop_assert!((d - narrow).norm() <= 1e-10);
    }

    #[test]
    fn functional_equation(r in 2.0f64..10.0, a in -0.7f64..0.7) {
        let policy = QuadraturePolicy::default();
        let z = Complex64::from_polar(r, a * PI);
        let lhs = log_barnes_oracle(z, &policy).unwrap().value
            - log_barnes_oracle(z - 1.0, &policy).unwrap().value;
        prop_assert!((lhs - log_gamma(z).unwrap()).norm() <= 1e-9);
    }

    #[test]
    fn oracle_is_prefix_plus_remainder(r in 2.0f64..10.0, a in -0.9f64..0.9, n in 1usize..=5) {
        let policy = QuadraturePolicy::default();
        let z = Complex64::from_polar(r, a * PI);
        let total = log_barnes_oracle(z, &policy).unwrap().value;
        let split = truncated_log_barnes(z, n).unwrap() + remainder_wide(z, n, &policy).unwrap().value;
        prop_assert!((total - split).norm() <= 1e-11 * total.norm().max(1.0));
    }
}
