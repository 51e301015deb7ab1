//! The remainder `R_N(z)` by quadrature of exact integral representations,
//! independent of the bound machinery in [`crate::expansion`].
//!
//! Integrals are taken in a normalised form (the powers of `|z|` pulled out)
//! so that the tolerance is relative to the natural size of the remainder.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::bernoulli::{bernoulli_number, horner, series_coefficient, BernoulliTable};
use crate::error::{domain, Error, Result};
use crate::expansion::truncated_log_barnes;
use crate::quadrature::Integrator;
use crate::special::{dilog_exp_neg, log_gamma};

/// Truncation index the wide representations are raised to before
/// integrating; the gap is bridged with exact series terms.
pub const LADDER_TARGET: usize = 8;

const ZETA3: f64 = 1.202_056_903_159_594_3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraturePolicy {
    /// Gauss–Legendre order used on each panel.
    pub nodes_per_interval: usize,
    /// Absolute tolerance for the normalised integral, tails included.
    pub tail_tolerance: f64,
    /// Cap on the number of unit intervals (and on adaptive panels).
    pub max_intervals: usize,
}

impl Default for QuadraturePolicy {
    fn default() -> Self {
        Self {
            nodes_per_interval: 32,
            tail_tolerance: 1e-13,
            max_intervals: 4096,
        }
    }
}

impl QuadraturePolicy {
    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_interval < 16 {
            return Err(Error::Range(format!(
                "nodes_per_interval {} below 16",
                self.nodes_per_interval
            )));
        }
        if !(self.tail_tolerance > 0.0 && self.tail_tolerance <= 1e-12) {
            return Err(Error::Range(format!(
                "tail_tolerance {} outside (0, 1e-12]",
                self.tail_tolerance
            )));
        }
        if self.max_intervals < 64 {
            return Err(Error::Range(format!(
                "max_intervals {} below 64",
                self.max_intervals
            )));
        }
        Ok(())
    }

    fn integrator(&self) -> Integrator {
        Integrator::new(self.nodes_per_interval, 64 * self.max_intervals)
    }
}

/// Integral representation used for a remainder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    /// Double integral against `log(1 - e^{-2πt})`, `|arg z| < π/2`.
    DoubleIntegral,
    /// Single integral against `Li₂(e^{-2πt})`, `|arg z| < π/2`.
    Dilogarithm,
    /// Periodic Bernoulli polynomial `B_{2N+1}({t})`, `|arg z| < π`.
    PeriodicBernoulli,
    /// Kernel `B_{2N+2}({t}) - B_{2N+2}` of fixed sign, `|arg z| < π`.
    ShiftedBernoulli,
}

impl Representation {
    pub fn as_str(self) -> &'static str {
        match self {
            Representation::DoubleIntegral => "double_integral",
            Representation::Dilogarithm => "dilogarithm",
            Representation::PeriodicBernoulli => "periodic_bernoulli",
            Representation::ShiftedBernoulli => "shifted_bernoulli",
        }
    }
}

/// Kernel choice for [`remainder_wide_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum WideForm {
    #[default]
    PeriodicBernoulli,
    ShiftedBernoulli,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValue {
    pub value: Complex64,
    pub est_error: f64,
    pub representation: Representation,
}

fn check_args(z: Complex64, n_trunc: usize) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(domain(format!("non-finite argument {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(domain(format!(
            "z = {} on the branch cut or at the origin",
            z.re
        )));
    }
    if n_trunc == 0 {
        return Err(Error::Range("truncation index must be ≥ 1".into()));
    }
    Ok(())
}

/// Upper bound for `Γ(a, x)`, `x > a - 1`.
fn upper_gamma_majorant(a: f64, x: f64) -> f64 {
    let ratio = (a - 1.0) / x;
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    ((a - 1.0) * x.ln() - x).exp() / (1.0 - ratio.max(0.0))
}

/// `R_N(z)` from the dilogarithm representation, `|arg z| < π/2`.
pub fn remainder_narrow(
    z: Complex64,
    n_trunc: usize,
    policy: &QuadraturePolicy,
) -> Result<OracleValue> {
    policy.validate()?;
    check_args(z, n_trunc)?;
    let theta = z.arg();
    if !(theta.abs() < FRAC_PI_2) {
        return Err(domain(format!(
            "dilogarithm representation needs |arg z| < π/2, got {theta}"
        )));
    }
    let r = z.norm();
    let m = 2 * n_trunc as i32 - 1;
    // |1 + (t/z)²|⁻¹ ≤ ℓ(θ)
    let ell = if theta.abs() <= std::f64::consts::FRAC_PI_4 {
        1.0
    } else {
        (2.0 * theta).sin().abs().recip()
    };
    let tol = policy.tail_tolerance;
    // tail: ℓ π²/6 ∫_T^∞ t^{2N-1} e^{-2πt} dt = ℓ π²/6 Γ(2N, 2πT) / (2π)^{2N}
    let a = 2.0 * n_trunc as f64;
    let mut upper = (4.0f64).max((1.0 / tol).ln() / (2.0 * PI) + 2.0);
    let tail =
        |t: f64| ell * PI * PI / 6.0 * upper_gamma_majorant(a, 2.0 * PI * t) / (2.0 * PI).powf(a);
    while tail(upper) > 0.25 * tol {
        upper += 1.0;
        if upper > policy.max_intervals as f64 {
            return Err(Error::Accuracy {
                reason: "dilogarithm tail did not reach tolerance".into(),
                est_error: tail(upper),
            });
        }
    }
    let inv_z2 = (z * z).inv();
    let integrand = |t: f64| {
        let w = Complex64::new(1.0, 0.0) + inv_z2 * (t * t);
        let v = t.powi(m) * dilog_exp_neg(2.0 * PI * t);
        w.inv() * v
    };
    let q = policy
        .integrator()
        .integrate(integrand, 0.0, upper, 0.5 * tol)?;
    let sign = if n_trunc % 2 == 0 { 1.0 } else { -1.0 };
    let pref = inv_z2.powi(n_trunc as i32) * (sign / (2.0 * PI * PI));
    let scale = r.powi(-2 * n_trunc as i32) / (2.0 * PI * PI);
    Ok(OracleValue {
        value: pref * q.value,
        est_error: (q.error + tail(upper)) * scale,
        representation: Representation::Dilogarithm,
    })
}

/// `R_N(z)` from the periodic Bernoulli representation, `|arg z| < π`.
pub fn remainder_wide(
    z: Complex64,
    n_trunc: usize,
    policy: &QuadraturePolicy,
) -> Result<OracleValue> {
    remainder_wide_with(z, n_trunc, policy, WideForm::PeriodicBernoulli)
}

/// `R_N(z)` from either wide-sector representation. The index is raised to
/// `max(N, 8)` first and the skipped series terms are added back exactly.
pub fn remainder_wide_with(
    z: Complex64,
    n_trunc: usize,
    policy: &QuadraturePolicy,
    form: WideForm,
) -> Result<OracleValue> {
    policy.validate()?;
    check_args(z, n_trunc)?;
    let k = n_trunc.max(LADDER_TARGET);
    let inv2 = (z * z).inv();
    let mut ladder = Complex64::new(0.0, 0.0);
    let mut power = inv2.powi(n_trunc as i32);
    for n in n_trunc..k {
        ladder += power * series_coefficient(n)?;
        power *= inv2;
    }
    let tail = wide_integral(z, k, policy, form)?;
    Ok(OracleValue {
        value: ladder + tail.value,
        est_error: tail.est_error + 4.0 * f64::EPSILON * ladder.norm(),
        representation: match form {
            WideForm::PeriodicBernoulli => Representation::PeriodicBernoulli,
            WideForm::ShiftedBernoulli => Representation::ShiftedBernoulli,
        },
    })
}

fn wide_integral(
    z: Complex64,
    k: usize,
    policy: &QuadraturePolicy,
    form: WideForm,
) -> Result<OracleValue> {
    let table = BernoulliTable::global();
    let kf = k as f64;
    let (coeffs, power, pref, sup) = match form {
        WideForm::PeriodicBernoulli => {
            let c = table.poly_coefficients(2 * k + 1)?;
            // sup |B_{2k+1}(x)| ≤ 2 (2k+1)! ζ(2k+1) / (2π)^{2k+1}
            let mut sup = 2.0 * ZETA3;
            for j in 1..=2 * k + 1 {
                sup *= j as f64 / (2.0 * PI);
            }
            (c, 2 * k as i32, -1.0 / (2.0 * kf * (2.0 * kf + 1.0)), sup)
        }
        WideForm::ShiftedBernoulli => {
            let mut c = table.poly_coefficients(2 * k + 2)?;
            let b = bernoulli_number(2 * k + 2)?;
            c[0] -= b;
            (
                c,
                2 * k as i32 + 1,
                -1.0 / ((2.0 * kf + 1.0) * (2.0 * kf + 2.0)),
                2.0 * b.abs(),
            )
        }
    };
    let r = z.norm();
    let theta = z.arg();
    let cos_half = (0.5 * theta).cos();
    let pf = power as f64;
    // ∫_M^∞ (r/|t+z|)^p dt using |t+z| ≥ (t+r) cos(θ/2) and |t+z| ≥ t + Re z
    let tail_at = |m: f64| {
        let a = r.powi(power) / ((pf - 1.0) * cos_half.powi(power) * (m + r).powf(pf - 1.0));
        let b = if m + z.re > 0.0 {
            r.powi(power) / ((pf - 1.0) * (m + z.re).powf(pf - 1.0))
        } else {
            f64::INFINITY
        };
        sup * a.min(b)
    };
    let tol = policy.tail_tolerance;
    let q = policy.integrator();
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut m = 0usize;
    loop {
        let tail = tail_at(m as f64);
        if tail <= 0.25 * tol {
            err += tail;
            break;
        }
        if m >= policy.max_intervals {
            return Err(Error::Accuracy {
                reason: format!("wide-sector tail not below tolerance after {m} intervals"),
                est_error: (err + tail) * pref.abs() * r.powi(-power),
            });
        }
        let shift = Complex64::new(m as f64, 0.0) + z;
        let f = |x: f64| {
            let ratio = (shift + x).inv() * r;
            ratio.powi(power) * horner(&coeffs, x)
        };
        let mf = (m + 1) as f64;
        let panel = q.integrate(f, 0.0, 1.0, tol / (4.0 * mf * mf))?;
        total += panel.value;
        err += panel.error;
        m += 1;
    }
    let scale = r.powi(-power);
    Ok(OracleValue {
        value: total * (pref * scale),
        est_error: err * pref.abs() * scale,
        representation: Representation::PeriodicBernoulli,
    })
}

/// `R_N(z)` from the double-integral representation, `|arg z| < π/2`.
/// Slow; kept as an independent cross-check.
pub fn remainder_double_integral(
    z: Complex64,
    n_trunc: usize,
    policy: &QuadraturePolicy,
) -> Result<OracleValue> {
    policy.validate()?;
    check_args(z, n_trunc)?;
    let theta = z.arg();
    if !(theta.abs() < FRAC_PI_2) {
        return Err(domain(format!(
            "double-integral representation needs |arg z| < π/2, got {theta}"
        )));
    }
    let tol = policy.tail_tolerance;
    let ell = if theta.abs() <= std::f64::consts::FRAC_PI_4 {
        1.0
    } else {
        (2.0 * theta).sin().abs().recip()
    };
    let n2 = 2 * n_trunc as i32;
    // inner integral ≤ ℓ/(2N); |log(1 - e^{-2πt})| ≤ e^{-2πt}/(1 - e^{-2πT}) for t ≥ T
    let a = n2 as f64 + 1.0;
    let mut upper = 4.0f64;
    let tail = |t: f64| {
        ell / (n2 as f64) * upper_gamma_majorant(a, 2.0 * PI * t)
            / (2.0 * PI).powf(a)
            / (-(-2.0 * PI * t).exp_m1())
    };
    while tail(upper) > 0.25 * tol {
        upper += 1.0;
    }
    let inner = Integrator::new(policy.nodes_per_interval, 4096);
    let inv_z2 = (z * z).inv();
    let mut failure = None;
    let outer = |t: f64| {
        let a = inv_z2 * (t * t);
        let g = |s: f64| (Complex64::new(1.0, 0.0) + a * (s * s)).inv() * s.powi(n2 - 1);
        let v = match inner.integrate(g, 0.0, 1.0, 1e-16) {
            Ok(v) => v.value,
            Err(e) => {
                failure = Some(e);
                Complex64::new(0.0, 0.0)
            }
        };
        v * (t.powi(n2) * (-(-2.0 * PI * t).exp_m1()).ln())
    };
    let q = policy
        .integrator()
        .integrate(outer, 0.0, upper, 0.5 * tol)?;
    if let Some(e) = failure {
        return Err(e);
    }
    let sign = if n_trunc % 2 == 0 { -1.0 } else { 1.0 };
    let pref = inv_z2.powi(n_trunc as i32) * (sign / PI);
    let scale = z.norm().powi(-n2) / PI;
    Ok(OracleValue {
        value: pref * q.value,
        est_error: (q.error + tail(upper)) * scale,
        representation: Representation::DoubleIntegral,
    })
}

/// `log G(z+1)`: the prefix of the expansion plus the quadrature remainder
/// `R_1`. Points with `|z| < 1` are first moved outward with
/// `log G(z+1) = log G(z+2) - log Γ(z+1)`.
pub fn log_barnes_oracle(z: Complex64, policy: &QuadraturePolicy) -> Result<OracleValue> {
    policy.validate()?;
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(domain(format!("non-finite argument {z}")));
    }
    if z.im == 0.0 && z.re < 0.0 {
        return Err(domain(format!("z = {} on the branch cut", z.re)));
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < 1.0 {
        shift += log_gamma(w + 1.0)?;
        w += 1.0;
    }
    let prefix = truncated_log_barnes(w, 1)?;
    let rem = remainder_wide(w, 1, policy)?;
    let value = prefix + rem.value - shift;
    let rounding = 8.0 * f64::EPSILON * (prefix.norm() + shift.norm() + w.norm_sqr());
    Ok(OracleValue {
        value,
        est_error: rem.est_error + rounding,
        representation: rem.representation,
    })
}
