//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use barnesg::expansion::{applicable_bounds, rotation_residual};
use barnesg::{
    bernoulli_number, exp_improved_log_barnes, log_barnes_oracle, log_gamma,
    optimal_rotation_angle, remainder_narrow, remainder_wide, series_coefficient, stokes_profile,
    terminant_with, truncated_log_barnes, Complex64, Constants, QuadraturePolicy, TerminantMethod,
    TruncationScheme,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn policy() -> QuadraturePolicy {
    QuadraturePolicy::default()
}

fn oracle(z: Complex64) -> Complex64 {
    log_barnes_oracle(z, &policy()).unwrap().value
}

/// Remainder oracle suited to the argument of `z`.
fn remainder(z: Complex64, n: usize) -> Complex64 {
    if z.arg().abs() < FRAC_PI_2 {
        remainder_narrow(z, n, &policy()).unwrap().value
    } else {
        remainder_wide(z, n, &policy()).unwrap().value
    }
}

/// Composite Simpson rule on `[a, b]` with `2m` panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    let h = (b - a) / (2 * m) as f64;
    let mut s = f(a) + f(b);
    for i in 1..2 * m {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// Deterministic xorshift stream on `[0, 1)`.
struct Stream(u64);

impl Stream {
    fn next(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn exact_values() -> Outcome {
    let mut worst = 0.0f64;
    for (z, expect) in [(1.0, 0.0), (2.0, 0.0), (3.0, 2f64.ln())] {
        let v = oracle(Complex64::new(z, 0.0));
        worst = worst.max((v - expect).norm());
    }
    outcome(worst <= 1e-10, format!("max |error| {worst:.2e}"))
}

fn functional_equation() -> Outcome {
    let mut worst = 0.0f64;
    for &r in &[2.0, 3.5, 5.0, 7.5, 10.0] {
        for &a in &[-0.7, -0.35, 0.0, 0.35, 0.7] {
            let z = Complex64::from_polar(r, a * PI);
            let lhs = oracle(z) - oracle(z - 1.0);
            worst = worst.max((lhs - log_gamma(z).unwrap()).norm());
        }
    }
    outcome(
        worst <= 1e-9,
        format!("25 points, max residual {worst:.2e}"),
    )
}

fn bound_validity() -> Outcome {
    let thetas = [
        0.0,
        PI / 6.0,
        -PI / 6.0,
        FRAC_PI_4,
        -FRAC_PI_4,
        0.45 * PI,
        -0.45 * PI,
        FRAC_PI_2,
        -FRAC_PI_2,
        0.6 * PI,
        -0.6 * PI,
        0.8 * PI,
        -0.8 * PI,
    ];
    let mut checks = 0;
    let mut violations = 0;
    let mut min_ratio = f64::INFINITY;
    for &r in &[2.0, 5.0, 10.0] {
        for &theta in &thetas {
            let z = if theta == 0.0 {
                Complex64::new(r, 0.0)
            } else {
                Complex64::from_polar(r, theta)
            };
            for n in 1..=6 {
                let actual = remainder(z, n).norm();
                for b in applicable_bounds(z, n).unwrap() {
                    checks += 1;
                    if actual > b.bound + 1e-10 {
                        violations += 1;
                    }
                    min_ratio = min_ratio.min(b.bound / actual);
                }
            }
        }
    }
    outcome(
        violations == 0,
        format!("{checks} bound checks, {violations} violations, min bound/|R| {min_ratio:.4}"),
    )
}

fn positive_axis_sign() -> Outcome {
    let mut failures = 0;
    let mut max_ratio = 0.0f64;
    for &x in &[1.5, 2.0, 5.0, 10.0, 50.0] {
        for n in 1..=6 {
            let r = remainder_narrow(Complex64::new(x, 0.0), n, &policy())
                .unwrap()
                .value
                .re;
            let b = bernoulli_number(2 * n + 2).unwrap();
            let first = series_coefficient(n).unwrap().abs() * x.powi(-2 * n as i32);
            let ratio = r.abs() / first;
            max_ratio = max_ratio.max(ratio);
            if r.signum() != b.signum() || ratio >= 1.0 {
                failures += 1;
            }
        }
    }
    outcome(
        failures == 0,
        format!("30 cases, {failures} failures, max |R_N|/first omitted {max_ratio:.4}"),
    )
}

fn rotation_angle() -> Outcome {
    let mut axis = 0.0f64;
    for n in 1..=10 {
        let phi = optimal_rotation_angle(FRAC_PI_2, n).unwrap();
        axis = axis.max((phi - (1.0 / (2.0 * n as f64 + 2.0).sqrt()).atan()).abs());
    }
    let mut residual = 0.0f64;
    for &theta in &[
        0.45 * PI,
        -0.45 * PI,
        0.6 * PI,
        -0.6 * PI,
        0.8 * PI,
        -0.8 * PI,
    ] {
        for n in 1..=6 {
            let phi = optimal_rotation_angle(theta, n).unwrap();
            residual = residual.max(rotation_residual(theta, n, phi).abs());
        }
    }
    outcome(
        axis <= 1e-12 && residual <= 1e-12,
        format!("axis error {axis:.2e}, max residual {residual:.2e}"),
    )
}

fn improved_exactness() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let scheme = TruncationScheme::uniform(2, 40);
    for (r, a) in [(2.0, 0.3), (2.5, 0.55), (3.0, -0.5)] {
        let z = Complex64::from_polar(r, a * PI);
        let v = exp_improved_log_barnes(z, &scheme).unwrap();
        let err = (v.value - oracle(z)).norm();
        pass &= err <= 1e-9 + v.k_tail_estimate;
        parts.push(format!("{err:.1e}"));
    }
    let z = Complex64::new(2.5, 0.0);
    let opt = exp_improved_log_barnes(z, &TruncationScheme::optimal(20)).unwrap();
    let uni = exp_improved_log_barnes(z, &TruncationScheme::uniform(3, 20)).unwrap();
    let gap = (opt.value - uni.value).norm();
    pass &= gap <= 1e-9;
    outcome(
        pass,
        format!(
            "errors [{}], optimal vs uniform {gap:.1e}",
            parts.join(", ")
        ),
    )
}

fn stokes_line_improvement() -> Outcome {
    let z = Complex64::new(0.0, 2.5);
    let exact = oracle(z);
    let n_opt = (PI * z.norm()).round() as usize;
    let plain = (truncated_log_barnes(z, n_opt).unwrap() - exact).norm();
    let hyper = exp_improved_log_barnes(z, &TruncationScheme::default()).unwrap();
    let improved = (hyper.value - exact).norm();
    outcome(
        improved <= 0.1 * plain,
        format!("truncated at N = {n_opt}: {plain:.2e}, improved: {improved:.2e}"),
    )
}

fn smoothing() -> Outcome {
    let thetas: Vec<f64> = (0..51).map(|i| FRAC_PI_2 - 0.5 + 0.02 * i as f64).collect();
    let profile = stokes_profile(3.0, 1, &thetas).unwrap();
    let worst = profile
        .iter()
        .map(|s| (s.normalized - s.erf_prediction).norm())
        .fold(0.0, f64::max);
    let mid = profile[25].normalized;
    let mid_gap = (mid - 0.5).norm();
    outcome(
        worst <= 0.05 && mid_gap <= 0.05,
        format!(
            "max deviation {worst:.4}, value on the line {:.4}{:+.4}i",
            mid.re, mid.im
        ),
    )
}

fn terminant_paths() -> Outcome {
    let mut stream = Stream(0x9e37_79b9_7f4a_7c15);
    let mut worst = 0.0f64;
    let mut used_quadrature = false;
    let mut recurrence = 0;
    for _ in 0..20 {
        let p = 1 + (stream.next() * 15.0) as u32;
        let r = 5.0 + 25.0 * stream.next();
        let a = (2.0 * stream.next() - 1.0) * 0.8 * PI;
        let w = Complex64::from_polar(r, a);
        let analytic = terminant_with(p, w, None).unwrap();
        let quad = terminant_with(p, w, Some(TerminantMethod::Quadrature)).unwrap();
        used_quadrature |= analytic.method == TerminantMethod::Quadrature;
        if analytic.method == TerminantMethod::Recurrence {
            recurrence += 1;
        }
        worst = worst.max((analytic.value - quad.value).norm() / quad.value.norm());
    }
    outcome(
        worst <= 1e-9 && !used_quadrature,
        format!(
            "20 samples ({recurrence} by recurrence, {} by continued fraction), max relative gap {worst:.2e}",
            20 - recurrence
        ),
    )
}

fn constants() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=3 {
        // t = u² removes the logarithmic endpoint behaviour
        let f = |u: f64| {
            let t = u * u;
            2.0 * u * t.powi(2 * n) * (-(-2.0 * PI * t).exp_m1()).ln()
        };
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        let lhs = sign / PI * simpson(f, 0.0, 4.0, 20_000);
        let rhs = bernoulli_number(2 * n as usize + 2).unwrap()
            / ((2 * n + 1) as f64 * (2 * n + 2) as f64);
        worst = worst.max((lhs - rhs).abs());
    }
    // ζ'(2) from the derivative of Hermite's integral for ζ(s)
    let g = |t: f64| {
        if t == 0.0 {
            return 1.0 / (2.0 * PI);
        }
        let a = t.atan();
        let num = a * (2.0 * a).cos() - 0.5 * (t * t).ln_1p() * (2.0 * a).sin();
        num / ((1.0 + t * t) * (2.0 * PI * t).exp_m1())
    };
    let zeta_prime_2 = -1.0 + 2.0 * simpson(g, 0.0, 10.0, 20_000);
    let euler_gamma = 0.577_215_664_901_532_9;
    let log_a = (euler_gamma + (2.0 * PI).ln()) / 12.0 - zeta_prime_2 / (2.0 * PI * PI);
    let gap = (log_a - Constants::get().log_a).abs();
    outcome(
        worst <= 1e-10 && gap <= 1e-10,
        format!("Bernoulli integrals {worst:.2e}, log A {gap:.2e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 10] = [
        (
            "exact values at z = 1, 2, 3",
            exact_values,
            Some(Duration::from_secs(1)),
        ),
        (
            "functional equation sweep",
            functional_equation,
            Some(Duration::from_secs(10)),
        ),
        (
            "bound validity grid",
            bound_validity,
            Some(Duration::from_secs(60)),
        ),
        ("sign on the positive axis", positive_axis_sign, None),
        ("optimal rotation angle", rotation_angle, None),
        ("improved expansion exactness", improved_exactness, None),
        (
            "improvement on the Stokes line",
            stokes_line_improvement,
            None,
        ),
        (
            "smoothing of the Stokes multiplier",
            smoothing,
            Some(Duration::from_secs(30)),
        ),
        ("terminant analytic vs quadrature", terminant_paths, None),
        ("Bernoulli integrals and log A", constants, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut o = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed >= *limit {
                o.pass = false;
                o.detail
                    .push_str(&format!("; over the {} s limit", limit.as_secs()));
            }
        }
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {} ({:.3} s)",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
