//! The terminant `T̂_p(w) = e^{πip} Γ(p) Γ(1-p, w) / (2πi)` for integer
//! `p ≥ 1`, on any sheet of the logarithm of `w`.
//!
//! Internally everything is carried in the scaled form `e^{w} T̂_p(w)`,
//! which stays bounded near the Stokes line where `T̂` itself is huge or
//! the exponential underflows.
//!
//! Three evaluations of the principal branch are available:
//!
//! * the incomplete-gamma recurrence, closed as
//!   `e^{w} T̂_p = -(e^{w}E₁(w) - Σ_{k=0}^{p-2} (-1)^k k!/w^{k+1}) / (2πi)`,
//!   accurate in absolute terms but subject to cancellation when the
//!   result is much smaller than the summands;
//! * the Legendre continued fraction for `Γ(1-p, w)`, accurate in relative
//!   terms away from the negative real axis;
//! * quadrature of `∫ (t/w)^{p-1} e^{-t} / (w+t) dt` along a ray turned away
//!   from the pole at `t = -w`.
//!
//! Other sheets follow from `T̂_p(w e^{2πim}) = T̂_p(w) + m`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::quadrature::{GaussLegendre, Integrator};
use crate::special::{
    e1_scaled, erf_saturating, erf_small, stokes_variable, upper_gamma_cf_scaled,
};

/// How a terminant value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TerminantMethod {
    Recurrence,
    ContinuedFraction,
    Quadrature,
    ErfAsymptotic,
}

impl TerminantMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            TerminantMethod::Recurrence => "recurrence",
            TerminantMethod::ContinuedFraction => "continued_fraction",
            TerminantMethod::Quadrature => "quadrature",
            TerminantMethod::ErfAsymptotic => "erf_asymptotic",
        }
    }
}

impl std::fmt::Display for TerminantMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerminantEval {
    pub value: Complex64,
    pub method: TerminantMethod,
    pub est_error: f64,
}

/// `e^{w} T̂_p(w)` with its absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Scaled {
    pub value: Complex64,
    pub est_error: f64,
    pub method: TerminantMethod,
}

/// Relative accuracy demanded of the recurrence before it is used by default.
const RECURRENCE_REL_TOL: f64 = 1e-12;
/// The continued fraction is tried only for `|arg w|` below this.
const CF_MAX_ARG: f64 = 0.8 * PI;

fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * PI)
}

fn ln_factorial(n: u32) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// Splits `arg` into a principal angle in `(-π, π]` and a sheet index.
pub(crate) fn reduce_arg(arg: f64) -> (f64, i32) {
    let mut a = arg;
    let mut m = 0;
    while a > PI {
        a -= 2.0 * PI;
        m += 1;
    }
    while a <= -PI {
        a += 2.0 * PI;
        m -= 1;
    }
    (a, m)
}

fn principal_point(abs: f64, arg: f64) -> Complex64 {
    // arg = π keeps a positive imaginary zero, i.e. the upper side of the cut
    let w = Complex64::from_polar(abs, arg);
    if arg == PI {
        Complex64::new(w.re, 0.0)
    } else {
        w
    }
}

fn check_p(p: u32) -> Result<()> {
    if p == 0 {
        return Err(domain("terminant order p must be positive"));
    }
    if p > 170 {
        return Err(Error::Range(format!("terminant order {p} above 170")));
    }
    Ok(())
}

pub(crate) fn scaled_recurrence(p: u32, w: Complex64) -> Result<Scaled> {
    let e1 = e1_scaled(w)?;
    let inv = w.inv();
    let mut term = inv;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mag = e1.norm();
    for k in 0..p.saturating_sub(1) {
        sum += term;
        mag = mag.max(term.norm());
        term *= -inv * (k as f64 + 1.0);
    }
    let value = -(e1 - sum) / two_pi_i();
    let est_error = (p as f64 + 16.0) * f64::EPSILON * mag / (2.0 * PI);
    Ok(Scaled {
        value,
        est_error,
        method: TerminantMethod::Recurrence,
    })
}

pub(crate) fn scaled_continued_fraction(p: u32, w: Complex64) -> Result<Scaled> {
    let a = 1.0 - p as f64;
    let k = upper_gamma_cf_scaled(a, w)?;
    let log_pref = Complex64::new(ln_factorial(p - 1), 0.0) + w.ln() * a;
    let phase = if p % 2 == 0 { 1.0 } else { -1.0 };
    let value = log_pref.exp() * k * phase / two_pi_i();
    Ok(Scaled {
        value,
        est_error: 64.0 * f64::EPSILON * value.norm(),
        method: TerminantMethod::ContinuedFraction,
    })
}

/// Ray quadrature for the principal branch. The ray leaves the real axis
/// only when the pole at `-w` is within `δ₀ = min(1, 2/√p)` of it, which
/// keeps the magnitude growth `cos^{-p}(α)` of the integrand modest.
pub(crate) fn scaled_quadrature(p: u32, w: Complex64) -> Result<Scaled> {
    let arg = w.arg();
    let gamma = if arg > 0.0 { arg - PI } else { arg + PI };
    let pf = p as f64;
    let delta0 = (2.0 / pf.sqrt()).min(1.0);
    let alpha = if gamma.abs() < delta0 {
        if gamma <= 0.0 {
            gamma + delta0
        } else {
            gamma - delta0
        }
    } else {
        0.0
    };
    let dir = Complex64::from_polar(1.0, alpha);
    let log_w = w.ln();
    let pm1 = pf - 1.0;
    let integrand = |r: f64| {
        let t = dir * r;
        let power = if p == 1 {
            Complex64::new(1.0, 0.0)
        } else {
            ((Complex64::new(r.ln(), alpha) - log_w) * pm1).exp()
        };
        power * (-t).exp() / (w + t) * dir
    };
    let upper = (pm1 + 45.0 + 9.0 * pf.sqrt()) / alpha.cos();
    // rough pass for the magnitude of the integral
    let rule = GaussLegendre::new(32);
    let mut rough = Complex64::new(0.0, 0.0);
    let mut l1 = 0.0;
    let pieces = 16;
    let mut f = integrand;
    for i in 0..pieces {
        let a = upper * i as f64 / pieces as f64;
        let b = upper * (i + 1) as f64 / pieces as f64;
        let (v, s) = rule.apply(&mut f, a, b);
        rough += v;
        l1 += s;
    }
    let size = rough.norm().max(1e-6 * l1);
    if !(size > 0.0) || !size.is_finite() {
        return Err(Error::Numerical(format!(
            "terminant quadrature degenerate at p = {p}, w = {w}"
        )));
    }
    let q = Integrator::new(32, 1 << 16).integrate(f, 0.0, upper, 1e-15 * size)?;
    let phase = if p % 2 == 0 { 1.0 } else { -1.0 };
    let value = q.value * phase / two_pi_i();
    Ok(Scaled {
        value,
        est_error: (q.error + 8.0 * f64::EPSILON * l1) / (2.0 * PI),
        method: TerminantMethod::Quadrature,
    })
}

fn principal_scaled(p: u32, w: Complex64, method: Option<TerminantMethod>) -> Result<Scaled> {
    match method {
        Some(TerminantMethod::Recurrence) => scaled_recurrence(p, w),
        Some(TerminantMethod::ContinuedFraction) => scaled_continued_fraction(p, w),
        Some(TerminantMethod::Quadrature) => scaled_quadrature(p, w),
        Some(TerminantMethod::ErfAsymptotic) => Err(domain(
            "the erf approximation has its own entry point, terminant_erf_approx",
        )),
        None => {
            let rec = scaled_recurrence(p, w)?;
            if rec.est_error <= RECURRENCE_REL_TOL * rec.value.norm() {
                return Ok(rec);
            }
            if w.arg().abs() <= CF_MAX_ARG && w.norm() >= 2.0 {
                if let Ok(cf) = scaled_continued_fraction(p, w) {
                    if cf.value.is_finite() {
                        return Ok(cf);
                    }
                }
            }
            scaled_quadrature(p, w)
        }
    }
}

/// `e^{w} T̂_p(w)` for `w = abs·e^{i arg}` on the sheet selected by `arg`.
pub(crate) fn scaled_polar(
    p: u32,
    abs: f64,
    arg: f64,
    method: Option<TerminantMethod>,
) -> Result<Scaled> {
    check_p(p)?;
    if !(abs > 0.0) || !abs.is_finite() || !arg.is_finite() {
        return Err(domain(format!(
            "terminant needs 0 < |w| < ∞, got |w| = {abs}, arg = {arg}"
        )));
    }
    let (a0, m) = reduce_arg(arg);
    let w0 = principal_point(abs, a0);
    let mut s = principal_scaled(p, w0, method)?;
    if m != 0 {
        s.value += w0.exp() * m as f64;
    }
    Ok(s)
}

fn unscale(p: u32, abs: f64, arg: f64, s: Scaled) -> TerminantEval {
    let (a0, _) = reduce_arg(arg);
    let factor = (-principal_point(abs, a0)).exp();
    let _ = p;
    TerminantEval {
        value: s.value * factor,
        method: s.method,
        est_error: s.est_error * factor.norm(),
    }
}

/// `T̂_p(w)` on the principal branch, `arg w ∈ (-π, π]`; a real negative
/// `w` with `+0.0` imaginary part lies on the upper side of the cut.
pub fn terminant(p: u32, w: Complex64) -> Result<TerminantEval> {
    terminant_with(p, w, None)
}

/// As [`terminant`], optionally forcing the evaluation method.
pub fn terminant_with(
    p: u32,
    w: Complex64,
    method: Option<TerminantMethod>,
) -> Result<TerminantEval> {
    if w == Complex64::new(0.0, 0.0) || !w.re.is_finite() || !w.im.is_finite() {
        return Err(domain(format!("terminant undefined at w = {w}")));
    }
    terminant_polar_with(p, w.norm(), w.arg(), method)
}

/// `T̂_p(|w| e^{i arg})`, continued analytically to any sheet.
pub fn terminant_polar(p: u32, abs: f64, arg: f64) -> Result<TerminantEval> {
    terminant_polar_with(p, abs, arg, None)
}

pub fn terminant_polar_with(
    p: u32,
    abs: f64,
    arg: f64,
    method: Option<TerminantMethod>,
) -> Result<TerminantEval> {
    let s = scaled_polar(p, abs, arg, method)?;
    Ok(unscale(p, abs, arg, s))
}

/// Error-function approximation for `p` near `|w|`:
/// `½ + ½ erf(c(φ)√(|w|/2))` for `arg w ≥ 0` (valid up to `3π - 0.1`), and the
/// mirrored `-½ + ½ erf(-conj c(-φ) √(|w|/2))` for `arg w < 0` (down to
/// `-3π + 0.1`). The error function saturates once its argument exceeds 4.
pub fn terminant_erf_approx(p: u32, abs: f64, arg: f64) -> Result<TerminantEval> {
    check_p(p)?;
    if !(abs > 0.0) || !abs.is_finite() {
        return Err(domain(format!(
            "erf approximation needs 0 < |w| < ∞, got {abs}"
        )));
    }
    if (p as f64 - abs).abs() > 0.2 * abs {
        return Err(domain(format!(
            "erf approximation needs p within 20% of |w|: p = {p}, |w| = {abs}"
        )));
    }
    if !(arg >= -3.0 * PI + 0.1 && arg <= 3.0 * PI - 0.1) {
        return Err(domain(format!(
            "erf approximation outside its sector: arg w = {arg}"
        )));
    }
    let scale = (0.5 * abs).sqrt();
    let value = if arg >= 0.0 {
        0.5 + 0.5 * erf_clamped(stokes_variable(arg)? * scale)
    } else {
        -0.5 + 0.5 * erf_clamped(-stokes_variable(-arg)?.conj() * scale)
    };
    Ok(TerminantEval {
        value,
        method: TerminantMethod::ErfAsymptotic,
        est_error: abs.sqrt().recip(),
    })
}

fn erf_clamped(zeta: Complex64) -> Complex64 {
    if zeta.norm() > 4.0 {
        Complex64::new(erf_saturating(zeta.re.signum() * 5.0), 0.0)
    } else {
        erf_small(zeta).unwrap_or(Complex64::new(zeta.re.signum(), 0.0))
    }
}
