//! Truncated asymptotic expansion of `log G(z+1)` and certified bounds on
//! its remainder.
//!
//! Every bound has the form `factor × |first omitted term|`, where the first
//! omitted term is `|B_{2N+2}| / (2N (2N+1) (2N+2) |z|^{2N})` and the factor
//! depends only on `θ = arg z` and `N`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::bernoulli::{composed_series_coefficient, series_coefficient, LOG_GLAISHER};
use crate::error::{domain, Error, Result};
use crate::special::log_gamma;

/// Largest truncation index accepted by the evaluation routines.
pub const MAX_TRUNCATION: usize = 20;

/// Factors above this are reported as weak.
pub const WEAK_FACTOR: f64 = 1e6;

/// Which estimate produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundSource {
    /// Factor 1 for `|θ| ≤ π/4`, `min(|csc 2θ|, √(e(2N+5/2))/2)` up to `|θ| = π/2`.
    Sector,
    /// Factor `sec^{2N+1}(θ/2)`, valid for `|θ| < π`.
    HalfAngleSecant,
    /// Factor `csc(2(θ-φ*)) / cos^{2N+1} φ*` from the optimally rotated path.
    OptimalRotation,
    /// On the positive axis the remainder has the sign of, and is smaller
    /// than, the first omitted term.
    PositiveAxisSign,
}

impl BoundSource {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundSource::Sector => "sector",
            BoundSource::HalfAngleSecant => "half_angle_secant",
            BoundSource::OptimalRotation => "optimal_rotation",
            BoundSource::PositiveAxisSign => "positive_axis_sign",
        }
    }
}

impl std::fmt::Display for BoundSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A bound on `|R_N(z)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub bound: f64,
    /// Multiplier of the first omitted term.
    pub factor: f64,
    /// Rotation angle, for [`BoundSource::OptimalRotation`].
    pub phi_star: Option<f64>,
    pub source: BoundSource,
}

/// Truncated expansion together with its certified bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionResult {
    pub value: Complex64,
    pub n_trunc: usize,
    pub bound: f64,
    pub bound_source: BoundSource,
    pub report: BoundReport,
    /// Set when the factor exceeds [`WEAK_FACTOR`] (close to the cut).
    pub weak: bool,
}

fn check_point(z: Complex64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(domain(format!("non-finite argument {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(domain(format!(
            "z = {} lies on the branch cut or at the origin",
            z.re
        )));
    }
    Ok(())
}

fn check_n(n_trunc: usize) -> Result<()> {
    if !(1..=MAX_TRUNCATION).contains(&n_trunc) {
        return Err(Error::Range(format!(
            "truncation index {n_trunc} outside 1..={MAX_TRUNCATION}"
        )));
    }
    Ok(())
}

/// `Σ_{n=1}^{N-1} c_n z^{-2n}` for a coefficient function `c`.
fn partial_sum(
    z: Complex64,
    n_trunc: usize,
    coeff: impl Fn(usize) -> Result<f64>,
) -> Result<Complex64> {
    let inv2 = (z * z).inv();
    let mut power = inv2;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..n_trunc {
        sum += power * coeff(n)?;
        power *= inv2;
    }
    Ok(sum)
}

/// The expansion truncated before the `z^{-2N}` term:
/// `¼z² + z log Γ(z+1) - (½z(z+1) + 1/12) log z - log A + Σ_{n<N} c_n z^{-2n}`.
pub fn truncated_log_barnes(z: Complex64, n_trunc: usize) -> Result<Complex64> {
    check_point(z)?;
    check_n(n_trunc)?;
    let log_z = z.ln();
    let lg = log_gamma(z + 1.0)?;
    let prefix = z * z * 0.25 + z * lg - (z * (z + 1.0) * 0.5 + 1.0 / 12.0) * log_z - LOG_GLAISHER;
    Ok(prefix + partial_sum(z, n_trunc, series_coefficient)?)
}

/// Barnes' form with the Stirling series substituted for `log Γ(z+1)`:
/// `-¾z² + (z/2) log 2π + (½z² - 1/12) log z + 1/12 - log A + Σ_{n<N} B_{2n+2}/(2n(2n+2)) z^{-2n}`.
///
/// No bound is attached to this form.
pub fn composed_log_barnes(z: Complex64, n_trunc: usize) -> Result<Complex64> {
    check_point(z)?;
    check_n(n_trunc)?;
    let log_z = z.ln();
    let prefix = z * z * -0.75
        + z * (0.5 * (2.0 * PI).ln())
        + (z * z * 0.5 - 1.0 / 12.0) * log_z
        + (1.0 / 12.0 - LOG_GLAISHER);
    Ok(prefix + partial_sum(z, n_trunc, composed_series_coefficient)?)
}

/// `|B_{2N+2}| / (2N(2N+1)(2N+2)|z|^{2N})`.
pub fn first_omitted_term(z: Complex64, n_trunc: usize) -> Result<f64> {
    let c = series_coefficient(n_trunc)?;
    Ok(c.abs() * z.norm().powi(-2 * n_trunc as i32))
}

/// `ℓ(θ)`: 1 for `|θ| ≤ π/4`, `|csc 2θ|` up to `π/2`, `+∞` at `|θ| = π/2`.
pub fn sector_factor(theta: f64) -> Result<f64> {
    let t = theta.abs();
    if !(t <= FRAC_PI_2) {
        return Err(domain(format!(
            "sector factor needs |θ| ≤ π/2, got {theta}"
        )));
    }
    if t <= FRAC_PI_4 {
        Ok(1.0)
    } else if t == FRAC_PI_2 {
        Ok(f64::INFINITY)
    } else {
        Ok((2.0 * t).sin().recip().abs())
    }
}

fn sector_cap(n_trunc: usize) -> f64 {
    0.5 * (std::f64::consts::E * (2.0 * n_trunc as f64 + 2.5)).sqrt()
}

/// Factor of the closed-sector bound, `|θ| ≤ π/2`.
fn closed_sector_factor(theta: f64, n_trunc: usize) -> Result<f64> {
    let l = sector_factor(theta)?;
    if theta.abs() <= FRAC_PI_4 {
        Ok(1.0)
    } else {
        Ok(l.min(sector_cap(n_trunc)))
    }
}

fn half_angle_factor(theta: f64, n_trunc: usize) -> f64 {
    (0.5 * theta).cos().abs().powi(-(2 * n_trunc as i32 + 1))
}

/// Every bound that applies at `(z, N)`.
pub fn applicable_bounds(z: Complex64, n_trunc: usize) -> Result<Vec<BoundReport>> {
    check_point(z)?;
    if n_trunc == 0 {
        return Err(Error::Range("truncation index must be ≥ 1".into()));
    }
    let base = first_omitted_term(z, n_trunc)?;
    let theta = z.arg();
    let mut out = Vec::with_capacity(4);
    if z.im == 0.0 && z.re > 0.0 {
        out.push(BoundReport {
            bound: base,
            factor: 1.0,
            phi_star: None,
            source: BoundSource::PositiveAxisSign,
        });
    }
    if theta.abs() <= FRAC_PI_2 {
        let f = closed_sector_factor(theta, n_trunc)?;
        out.push(BoundReport {
            bound: base * f,
            factor: f,
            phi_star: None,
            source: BoundSource::Sector,
        });
    }
    let f = half_angle_factor(theta, n_trunc);
    out.push(BoundReport {
        bound: base * f,
        factor: f,
        phi_star: None,
        source: BoundSource::HalfAngleSecant,
    });
    if theta.abs() > FRAC_PI_4 {
        out.push(rotation_bound(z, n_trunc)?);
    }
    Ok(out)
}

fn smallest(reports: &[BoundReport]) -> BoundReport {
    let mut best = reports[0];
    for r in &reports[1..] {
        if r.bound < best.bound {
            best = *r;
        }
    }
    best
}

/// The smaller of the closed-sector bound (when `|θ| ≤ π/2`) and the
/// half-angle secant bound.
pub fn sector_bound(z: Complex64, n_trunc: usize) -> Result<BoundReport> {
    let all = applicable_bounds(z, n_trunc)?;
    let candidates: Vec<_> = all
        .into_iter()
        .filter(|r| matches!(r.source, BoundSource::Sector | BoundSource::HalfAngleSecant))
        .collect();
    Ok(smallest(&candidates))
}

/// Residual of `(2N+3) cos(3φ - 2θ) - (2N-1) cos(φ - 2θ)`.
pub fn rotation_residual(theta: f64, n_trunc: usize, phi: f64) -> f64 {
    let n = n_trunc as f64;
    (2.0 * n + 3.0) * (3.0 * phi - 2.0 * theta).cos() - (2.0 * n - 1.0) * (phi - 2.0 * theta).cos()
}

fn rotation_residual_derivative(theta: f64, n_trunc: usize, phi: f64) -> f64 {
    let n = n_trunc as f64;
    -3.0 * (2.0 * n + 3.0) * (3.0 * phi - 2.0 * theta).sin()
        + (2.0 * n - 1.0) * (phi - 2.0 * theta).sin()
}

/// Bracket holding the optimal angle for `π/4 < θ < π`.
pub fn rotation_bracket(theta: f64) -> Result<(f64, f64)> {
    if !(theta > FRAC_PI_4 && theta < PI) {
        return Err(domain(format!(
            "rotation bracket needs π/4 < θ < π, got {theta}"
        )));
    }
    Ok(if theta >= 0.75 * PI {
        (theta - FRAC_PI_2, FRAC_PI_2)
    } else if theta >= FRAC_PI_2 {
        (theta - FRAC_PI_2, theta - FRAC_PI_4)
    } else {
        (0.0, theta - FRAC_PI_4)
    })
}

/// Root `φ*` of `(2N+3) cos(3φ - 2θ) = (2N-1) cos(φ - 2θ)` in the bracket
/// for `θ`; odd in `θ`. Defined for `π/4 < |θ| < π`.
pub fn optimal_rotation_angle(theta: f64, n_trunc: usize) -> Result<f64> {
    if n_trunc == 0 {
        return Err(Error::Range("truncation index must be ≥ 1".into()));
    }
    if theta < 0.0 {
        return optimal_rotation_angle(-theta, n_trunc).map(|p| -p);
    }
    let (mut lo, mut hi) = rotation_bracket(theta)?;
    let f = |phi| rotation_residual(theta, n_trunc, phi);
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Numerical(format!(
            "no sign change of the rotation equation on [{lo}, {hi}] at θ = {theta}, N = {n_trunc}"
        )));
    }
    let (a, b) = (lo, hi);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let mut phi = 0.5 * (lo + hi);
    for _ in 0..2 {
        let d = rotation_residual_derivative(theta, n_trunc, phi);
        if d == 0.0 {
            break;
        }
        let next = phi - f(phi) / d;
        if next > a && next < b && f(next).abs() <= f(phi).abs() {
            phi = next;
        }
    }
    Ok(phi)
}

/// Optimal-rotation bound, `π/4 < |arg z| < π`.
pub fn rotation_bound(z: Complex64, n_trunc: usize) -> Result<BoundReport> {
    check_point(z)?;
    let theta = z.arg();
    let phi = optimal_rotation_angle(theta, n_trunc)?;
    let (t, p) = (theta.abs(), phi.abs());
    let factor = (2.0 * (t - p)).sin().recip() * p.cos().powi(-(2 * n_trunc as i32 + 1));
    Ok(BoundReport {
        bound: first_omitted_term(z, n_trunc)? * factor,
        factor,
        phi_star: Some(phi),
        source: BoundSource::OptimalRotation,
    })
}

/// Truncated expansion with the best available bound. Without `n_trunc`
/// the index minimising that bound over `1..=20` is used (ties go to the
/// smaller index).
pub fn certified_eval(z: Complex64, n_trunc: Option<usize>) -> Result<ExpansionResult> {
    check_point(z)?;
    let candidates: Vec<usize> = match n_trunc {
        Some(n) => {
            check_n(n)?;
            vec![n]
        }
        None => (1..=MAX_TRUNCATION).collect(),
    };
    let mut best: Option<(usize, BoundReport)> = None;
    for n in candidates {
        let r = smallest(&applicable_bounds(z, n)?);
        if best.map_or(true, |(_, b)| r.bound < b.bound) {
            best = Some((n, r));
        }
    }
    let (n, report) = best.expect("at least one candidate");
    Ok(ExpansionResult {
        value: truncated_log_barnes(z, n)?,
        n_trunc: n,
        bound: report.bound,
        bound_source: report.source,
        report,
        weak: report.factor > WEAK_FACTOR,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn consecutive_truncations_differ_by_one_term() {
        let a = truncated_log_barnes(c(3.0, 0.0), 1).unwrap();
        let b = truncated_log_barnes(c(3.0, 0.0), 2).unwrap();
        assert!((b - a - c(-1.0 / 6480.0, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn rejects_cut_and_origin() {
        assert!(matches!(
            truncated_log_barnes(c(0.0, 0.0), 1),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            truncated_log_barnes(c(-2.0, 0.0), 1),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            truncated_log_barnes(c(2.0, 0.0), 21),
            Err(Error::Range(_))
        ));
        assert!(certified_eval(c(-1.0, 0.0), None).is_err());
    }

    #[test]
    fn composed_form_is_real_on_positive_axis() {
        let v = composed_log_barnes(c(8.0, 0.0), 3).unwrap();
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn sector_factor_examples() {
        assert_eq!(sector_factor(0.0).unwrap(), 1.0);
        assert_eq!(sector_factor(FRAC_PI_4).unwrap(), 1.0);
        assert!((sector_factor(3.0 * PI / 8.0).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(sector_factor(-FRAC_PI_2).unwrap(), f64::INFINITY);
        assert!(sector_factor(1.6).is_err());
    }

    #[test]
    fn sector_bound_examples() {
        let z = Complex64::from_polar(3.0, 0.0);
        let r = sector_bound(z, 2).unwrap();
        let expected = (1.0 / 42.0) / (4.0 * 5.0 * 6.0) / 81.0;
        assert_eq!(r.factor, 1.0);
        assert!((r.bound - expected).abs() < 1e-18);

        let z = c(0.0, 2.0);
        let all = applicable_bounds(z, 1).unwrap();
        let s = all
            .iter()
            .find(|r| r.source == BoundSource::Sector)
            .unwrap();
        assert!((s.factor - (4.5 * std::f64::consts::E).sqrt() / 2.0).abs() < 1e-15);
        assert!((s.factor - (4.5 * std::f64::consts::E).sqrt() / 2.0).abs() < 1e-14);
        assert!((s.factor - 1.748_73).abs() < 1e-5);
    }

    #[test]
    fn rotation_angle_on_imaginary_axis() {
        for n in 1..=10 {
            let phi = optimal_rotation_angle(FRAC_PI_2, n).unwrap();
            let exact = (1.0 / (2.0 * n as f64 + 2.0).sqrt()).atan();
            assert!((phi - exact).abs() < 1e-12, "N = {n}");
        }
        assert!((optimal_rotation_angle(FRAC_PI_2, 1).unwrap() - 0.463_647_61).abs() < 1e-8);
        assert!((optimal_rotation_angle(FRAC_PI_2, 4).unwrap() - 0.306_277_37).abs() < 1e-8);
    }

    #[test]
    fn rotation_factor_on_imaginary_axis() {
        // (1 + t²)^{N + 3/2} / (2t) with t = tan φ* = 1/√(2N+2)
        for n in 1..=12 {
            let r = rotation_bound(c(0.0, 5.0), n).unwrap();
            let t = 1.0 / (2.0 * n as f64 + 2.0).sqrt();
            let closed = (1.0 + t * t).powf(n as f64 + 1.5) / (2.0 * t);
            assert!((r.factor - closed).abs() < 1e-12 * closed, "N = {n}");
            assert!(r.factor <= sector_cap(n));
        }
        let r = rotation_bound(c(0.0, 5.0), 1).unwrap();
        assert!((r.factor - 1.25f64.powf(2.5)).abs() < 1e-12);
    }

    #[test]
    fn rotation_angle_rejects_outside_range() {
        assert!(optimal_rotation_angle(0.5, 2).is_err());
        assert!(optimal_rotation_angle(PI, 2).is_err());
    }

    #[test]
    fn certified_eval_positive_axis() {
        let r = certified_eval(c(10.0, 0.0), None).unwrap();
        assert_eq!(r.bound_source, BoundSource::PositiveAxisSign);
        assert_eq!(r.report.factor, 1.0);
        let one = certified_eval(c(20.0, 0.0), Some(1)).unwrap();
        let best = certified_eval(c(20.0, 0.0), None).unwrap();
        assert!(best.bound <= one.bound);
    }

    #[test]
    fn certified_eval_picks_smaller_bound_in_wide_sector() {
        let z = Complex64::from_polar(2.0, 0.8 * PI);
        let r = certified_eval(z, Some(3)).unwrap();
        let sec = applicable_bounds(z, 3).unwrap();
        let min = sec.iter().map(|b| b.bound).fold(f64::INFINITY, f64::min);
        assert_eq!(r.bound, min);
        assert!(sec.iter().any(|b| b.source == BoundSource::OptimalRotation));
        let near_cut = Complex64::from_polar(2.0, PI - 1e-3);
        let r = certified_eval(near_cut, Some(10)).unwrap();
        assert!(r.bound.is_finite() && r.weak);
    }

    proptest! {
        #[test]
        fn rotation_residual_is_small(theta in 0.7854f64..3.14, n in 1usize..=20, sign in prop::bool::ANY) {
            let theta = if sign { theta } else { -theta };
            prop_assume!(theta.abs() > FRAC_PI_4 + 1e-9 && theta.abs() < PI);
            let phi = optimal_rotation_angle(theta, n).unwrap();
            prop_assert!(rotation_residual(theta, n, phi).abs() <= 1e-12);
            let (lo, hi) = rotation_bracket(theta.abs()).unwrap();
            prop_assert!(phi.abs() > lo && phi.abs() < hi);
            let mirrored = optimal_rotation_angle(-theta, n).unwrap();
            prop_assert_eq!(mirrored, -phi);
        }

        #[test]
        fn bounds_are_conjugation_invariant(r in 1.5f64..20.0, theta in 0.01f64..3.1, n in 1usize..=8) {
            let z = Complex64::from_polar(r, theta);
            let a = applicable_bounds(z, n).unwrap();
            let b = applicable_bounds(z.conj(), n).unwrap();
            prop_assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x.bound - y.bound).abs() <= 1e-15 * x.bound);
            }
        }

        #[test]
        fn sector_factor_beats_secant_power(theta in -1.5707f64..1.5707, n in 1usize..=10) {
            let f = closed_sector_factor(theta, n).unwrap();
            prop_assert!(f <= theta.cos().powi(-2 * n as i32) * (1.0 + 1e-15));
        }
    }
}
