//! Scalar kernels: complex log-gamma, the real dilogarithm, the exponential
//! integral `E₁`, the error function for moderate complex argument and the
//! transition variable of the terminant's error-function asymptotics.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::bernoulli::{bernoulli_number, EULER_GAMMA};
use crate::error::{domain, Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const PI2_OVER_6: f64 = PI * PI / 6.0;

/// Shift-then-Stirling strategy for [`log_gamma_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogGammaPolicy {
    /// The argument is shifted upward until its modulus reaches this value.
    pub shift_threshold: f64,
    /// Number of Bernoulli terms in the Stirling tail.
    pub stirling_terms: usize,
}

impl Default for LogGammaPolicy {
    fn default() -> Self {
        Self {
            shift_threshold: 10.0,
            stirling_terms: 12,
        }
    }
}

impl LogGammaPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.shift_threshold >= 8.0) {
            return Err(Error::Range(format!(
                "shift threshold {} below 8",
                self.shift_threshold
            )));
        }
        if !(4..=20).contains(&self.stirling_terms) {
            return Err(Error::Range(format!(
                "stirling_terms {} outside 4..=20",
                self.stirling_terms
            )));
        }
        Ok(())
    }
}

/// Principal branch of `log Γ(z)`: the branch analytic in the plane cut
/// along the negative real axis and real on the positive axis.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    log_gamma_with(z, &LogGammaPolicy::default())
}

pub fn log_gamma_with(z: Complex64, policy: &LogGammaPolicy) -> Result<Complex64> {
    policy.validate()?;
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(domain(format!("log_gamma of non-finite {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(domain(format!(
            "log_gamma at {} (pole or negative real axis)",
            z.re
        )));
    }
    // log Γ(z) = log Γ(z + n) - Σ_{j<n} log(z + j); principal logs keep the
    // result on the analytic branch.
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < policy.shift_threshold || w.re < 0.0 {
        shift += w.ln();
        w += 1.0;
    }
    let log_w = w.ln();
    let mut value = (w - 0.5) * log_w - w + LN_SQRT_2PI;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut power = inv;
    for k in 1..=policy.stirling_terms {
        let b = bernoulli_number(2 * k)?;
        let kf = k as f64;
        value += power * (b / (2.0 * kf * (2.0 * kf - 1.0)));
        power *= inv2;
    }
    Ok(value - shift)
}

/// Real dilogarithm `Li₂(x) = Σ xⁿ/n²` on `[0, 1]`.
///
/// Direct series for `x ≤ 1/2`, Euler's reflection above.
pub fn dilog(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(domain(format!("dilog argument {x} outside [0, 1]")));
    }
    if x <= 0.5 {
        return Ok(dilog_series(x));
    }
    if x == 1.0 {
        return Ok(PI2_OVER_6);
    }
    let y = 1.0 - x;
    Ok(PI2_OVER_6 - x.ln() * y.ln() - dilog_series(y))
}

/// `Li₂(e^{-u})` for `u ≥ 0`, accurate as `u → 0`.
pub(crate) fn dilog_exp_neg(u: f64) -> f64 {
    if u == 0.0 {
        return PI2_OVER_6;
    }
    if u >= std::f64::consts::LN_2 {
        return dilog_series((-u).exp());
    }
    let y = -(-u).exp_m1();
    PI2_OVER_6 + u * y.ln() - dilog_series(y)
}

fn dilog_series(x: f64) -> f64 {
    let mut sum = 0.0f64;
    let mut power = x;
    let mut n = 1.0f64;
    while power > 1e-18 * sum.max(f64::MIN_POSITIVE) || n < 2.0 {
        sum += power / (n * n);
        power *= x;
        n += 1.0;
        if power == 0.0 {
            break;
        }
    }
    sum
}

/// Exponential integral `E₁(w) = Γ(0, w)`, principal branch.
///
/// On the negative real axis the sign of the imaginary zero selects the side
/// of the cut, as for the principal logarithm.
pub fn exp_integral_e1(w: Complex64) -> Result<Complex64> {
    Ok(e1_scaled(w)? * (-w).exp())
}

/// `e^{w} E₁(w)`, finite for all `w ≠ 0` even where `E₁` overflows.
pub(crate) fn e1_scaled(w: Complex64) -> Result<Complex64> {
    if w == Complex64::new(0.0, 0.0) {
        return Err(domain("E1 has a logarithmic singularity at 0"));
    }
    let r = w.norm();
    if r <= 2.0 || r + w.re <= 4.0 {
        Ok(e1_series_scaled(w))
    } else {
        Ok(upper_gamma_cf_scaled(0.0, w)?)
    }
}

/// Power series `E₁(w) = -γ - log w - Σ (-w)^k / (k k!)`, each term carried
/// with the factor `e^{w}` folded into its exponent.
fn e1_series_scaled(w: Complex64) -> Complex64 {
    let lead = (-EULER_GAMMA - w.ln()) * w.exp();
    let log_neg_w = (-w).ln();
    let r = w.norm();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut ln_fact = 0.0;
    let mut k = 1u32;
    loop {
        let kf = k as f64;
        ln_fact += kf.ln();
        let term = (w + log_neg_w * kf - (ln_fact + kf.ln())).exp();
        sum += term;
        if kf > r && term.norm() <= 1e-17 * sum.norm().max(f64::MIN_POSITIVE) {
            break;
        }
        if k > 100_000 {
            break;
        }
        k += 1;
    }
    lead - sum
}

/// Legendre continued fraction (modified Lentz) for the upper incomplete
/// gamma function: returns `K` with `e^{w} Γ(a, w) = w^a K`.
pub(crate) fn upper_gamma_cf_scaled(a: f64, w: Complex64) -> Result<Complex64> {
    const TINY: f64 = 1e-300;
    const MAX_ITER: usize = 100_000;
    let mut b = w + (1.0 - a);
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        let an = -fi * (fi - a);
        b += 2.0;
        d = b + d * an;
        if d.norm() < TINY {
            d = Complex64::new(TINY, 0.0);
        }
        c = b + c.inv() * an;
        if c.norm() < TINY {
            c = Complex64::new(TINY, 0.0);
        }
        d = d.inv();
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            return Ok(h);
        }
    }
    Err(Error::Accuracy {
        reason: format!("incomplete gamma continued fraction did not converge at a={a}, w={w}"),
        est_error: f64::NAN,
    })
}

/// Error function for `|ζ| ≤ 4`.
///
/// Maclaurin series below `|ζ| = 2.5` and away from the real axis; the
/// Laplace continued fraction for `erfc` in the sectors `|arg(±ζ)| ≤ π/3`
/// beyond it.
pub fn erf_small(zeta: Complex64) -> Result<Complex64> {
    let r = zeta.norm();
    if !(r <= 4.0) {
        return Err(Error::Range(format!(
            "erf_small argument {zeta} has |ζ| > 4"
        )));
    }
    if r >= 2.5 && zeta.re.abs() >= 0.5 * r {
        let (s, x) = if zeta.re < 0.0 {
            (-1.0, -zeta)
        } else {
            (1.0, zeta)
        };
        return Ok((Complex64::new(1.0, 0.0) - erfc_cf(x)) * s);
    }
    Ok(erf_maclaurin(zeta))
}

fn erf_maclaurin(z: Complex64) -> Complex64 {
    // erf z = 2/√π Σ (-1)^n z^{2n+1} / (n! (2n+1))
    let z2 = z * z;
    let mut power = z;
    let mut sum = z;
    let mut n = 0.0f64;
    loop {
        n += 1.0;
        power = -power * z2 / n;
        let term = power / (2.0 * n + 1.0);
        sum += term;
        if term.norm() < 1e-17 * sum.norm().max(1e-300) && n > 2.0 {
            break;
        }
        if n > 400.0 {
            break;
        }
    }
    sum * std::f64::consts::FRAC_2_SQRT_PI
}

fn erfc_cf(z: Complex64) -> Complex64 {
    // erfc z = e^{-z²}/√π · 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
    const TINY: f64 = 1e-300;
    let mut f = z;
    let mut c = z;
    let mut d = Complex64::new(0.0, 0.0);
    for j in 1..2000 {
        let a = j as f64 * 0.5;
        d = z + d * a;
        if d.norm() < TINY {
            d = Complex64::new(TINY, 0.0);
        }
        c = z + c.inv() * a;
        if c.norm() < TINY {
            c = Complex64::new(TINY, 0.0);
        }
        d = d.inv();
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    (-z * z).exp() / (f * PI.sqrt())
}

/// Real error function with saturation to `±1` beyond `|x| = 4`.
pub(crate) fn erf_saturating(x: f64) -> f64 {
    if x.abs() > 4.0 {
        x.signum()
    } else {
        erf_small(Complex64::new(x, 0.0))
            .map(|v| v.re)
            .unwrap_or(x.signum())
    }
}

/// Transition variable of the terminant's error-function asymptotics:
/// the root of `½ c² = 1 + i(φ-π) - e^{i(φ-π)}` that behaves like
/// `(φ-π) + (i/6)(φ-π)²` near `φ = π`. Defined for `|φ - π| < 2π`.
pub fn stokes_variable(phi: f64) -> Result<Complex64> {
    let delta = phi - PI;
    if !(delta.abs() < 2.0 * PI) {
        return Err(domain(format!(
            "stokes_variable: |φ - π| = {} ≥ 2π",
            delta.abs()
        )));
    }
    if delta == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    // q = c²/δ² has positive real part 2(1 - cos δ)/δ² on the whole range,
    // so the principal square root selects the branch continuously.
    let q = if delta.abs() < 1.0 {
        // -2 Σ_{k≥2} i^k δ^{k-2} / k!
        let mut q = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(-1.0, 0.0) * 0.5; // i²/2!
        let i_delta = Complex64::new(0.0, delta);
        for k in 2..40 {
            q += term;
            term *= i_delta / ((k + 1) as f64);
            if term.norm() < 1e-18 {
                break;
            }
        }
        q * -2.0
    } else {
        let e = Complex64::new(0.0, delta).exp();
        (Complex64::new(1.0, delta) - e) * 2.0 / (delta * delta)
    };
    Ok(q.sqrt() * delta)
}

/// `½ c² - (1 + iδ - e^{iδ})` for diagnostics.
pub fn stokes_variable_residual(phi: f64, c: Complex64) -> f64 {
    let delta = phi - PI;
    let rhs = Complex64::new(1.0, delta) - Complex64::new(0.0, delta).exp();
    (c * c * 0.5 - rhs).norm()
}
