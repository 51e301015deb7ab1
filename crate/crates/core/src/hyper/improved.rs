//! Exponentially improved expansion of `log G(z+1)`:
//!
//! ```text
//! log G(z+1) = prefix
//!            - Σ_k (2πk)^{-2} Σ_{n<N_k} (-1)^n 2(2n+1)! / (2πkz)^{2n+2}
//!            - Σ_k [T̂_{2N_k+1}(2πkiz) e^{2πkiz} + T̂_{2N_k+1}(-2πkiz) e^{-2πkiz}] / (2πik²)
//! ```
//!
//! exact for any sequence `N_k`. The first double sum is evaluated over all
//! `k` by swapping the order of summation (its `k`-sums are zeta tails); only
//! the terminant sum is cut at `k_max`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::terminant::{scaled_polar, Scaled};
use crate::error::{domain, Error, Result};
use crate::expansion::truncated_log_barnes;

/// Cap on `N_k` in optimal mode.
pub const OPTIMAL_CAP: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruncationMode {
    /// `N_k = round(πk|z|)`, capped at [`OPTIMAL_CAP`].
    Optimal,
    /// The same `N_k` for every `k`.
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationScheme {
    pub mode: TruncationMode,
    /// `N_k` in uniform mode.
    pub uniform_n: Option<usize>,
    /// Number of terminant pairs summed.
    pub k_max: usize,
}

impl Default for TruncationScheme {
    fn default() -> Self {
        Self::optimal(5)
    }
}

impl TruncationScheme {
    pub fn optimal(k_max: usize) -> Self {
        Self {
            mode: TruncationMode::Optimal,
            uniform_n: None,
            k_max,
        }
    }

    pub fn uniform(n: usize, k_max: usize) -> Self {
        Self {
            mode: TruncationMode::Uniform,
            uniform_n: Some(n),
            k_max,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k_max == 0 {
            return Err(Error::Range("k_max must be at least 1".into()));
        }
        if self.k_max > 10_000 {
            return Err(Error::Range(format!("k_max {} above 10000", self.k_max)));
        }
        match (self.mode, self.uniform_n) {
            (TruncationMode::Uniform, None) => {
                Err(Error::Range("uniform mode needs uniform_n".into()))
            }
            (TruncationMode::Uniform, Some(n)) if n > 60 => {
                Err(Error::Range(format!("uniform_n {n} above 60")))
            }
            _ => Ok(()),
        }
    }

    /// `N_k` for this scheme at modulus `abs_z`.
    pub fn n_k(&self, k: usize, abs_z: f64) -> usize {
        match self.mode {
            TruncationMode::Optimal => optimal_n(k, abs_z),
            TruncationMode::Uniform => self.uniform_n.unwrap_or(0),
        }
    }

    /// Value shared by all `k` from some point on.
    fn limit_n(&self) -> usize {
        match self.mode {
            TruncationMode::Optimal => OPTIMAL_CAP,
            TruncationMode::Uniform => self.uniform_n.unwrap_or(0),
        }
    }
}

pub(crate) fn optimal_n(k: usize, abs_z: f64) -> usize {
    let n = (PI * k as f64 * abs_z).round();
    if n >= OPTIMAL_CAP as f64 {
        OPTIMAL_CAP
    } else {
        n.max(0.0) as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImprovedValue {
    pub value: Complex64,
    /// Estimate of the omitted terminant terms `k > k_max`.
    pub k_tail_estimate: f64,
    /// Accumulated evaluation error (terminants and rounding).
    pub est_error: f64,
}

/// `Σ_{k≥from} k^{-s}`, `s ≥ 2`.
fn zeta_tail(s: i32, from: usize) -> f64 {
    const DIRECT: usize = 64;
    let mut sum = 0.0;
    let end = from + DIRECT;
    for k in (from..end).rev() {
        sum += (k as f64).powi(-s);
    }
    // Euler–Maclaurin for the rest
    let m = end as f64;
    let sf = s as f64;
    sum + m.powf(1.0 - sf) / (sf - 1.0) + 0.5 * m.powi(-s) + sf / 12.0 * m.powi(-s - 1)
        - sf * (sf + 1.0) * (sf + 2.0) / 720.0 * m.powi(-s - 3)
}

/// First double sum, all `k`.
fn first_sum(z: Complex64, scheme: &TruncationScheme) -> Complex64 {
    let abs_z = z.norm();
    let limit = scheme.limit_n();
    // N_k = limit for every k ≥ k_c
    let mut k_c = 1;
    while scheme.n_k(k_c, abs_z) != limit {
        k_c += 1;
    }
    let n_ks: Vec<usize> = (1..k_c).map(|k| scheme.n_k(k, abs_z)).collect();
    let n_top = n_ks.iter().copied().chain([limit]).max().unwrap_or(0);
    let two_pi = 2.0 * PI;
    let inv_w2 = (z * z * (two_pi * two_pi)).inv();
    // a_n = 2(2n+1)! / ((2π)^{2n+4} z^{2n+2})
    let mut a = inv_w2 * (2.0 / (two_pi * two_pi));
    let mut total = Complex64::new(0.0, 0.0);
    for n in 0..n_top {
        let s = 2 * n as i32 + 4;
        let mut ks = 0.0;
        for (i, &nk) in n_ks.iter().enumerate() {
            if nk > n {
                ks += ((i + 1) as f64).powi(-s);
            }
        }
        if limit > n {
            ks += zeta_tail(s, k_c);
        }
        let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
        total += a * (sign * ks);
        let nf = n as f64;
        a *= inv_w2 * ((2.0 * nf + 2.0) * (2.0 * nf + 3.0));
    }
    total
}

/// Scaled terminants `e^{±2πkiz} T̂(±2πkiz)` on the sheets reached
/// continuously from the positive real `z` axis.
pub(crate) fn terminant_pair(p: u32, k: usize, z: Complex64) -> Result<(Scaled, Scaled)> {
    let abs_w = 2.0 * PI * k as f64 * z.norm();
    let theta = z.arg();
    let plus = scaled_polar(p, abs_w, theta + FRAC_PI_2, None)?;
    let minus = scaled_polar(p, abs_w, theta - FRAC_PI_2, None)?;
    Ok((plus, minus))
}

/// Improved expansion for `|arg z| < π`.
pub fn exp_improved_log_barnes(z: Complex64, scheme: &TruncationScheme) -> Result<ImprovedValue> {
    scheme.validate()?;
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(domain(format!(
            "z = {} on the branch cut or at the origin",
            z.re
        )));
    }
    let prefix = truncated_log_barnes(z, 1)?;
    let first = first_sum(z, scheme);
    let abs_z = z.norm();
    let mut terminants = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut last = 0.0;
    let mut last_p = 1;
    for k in 1..=scheme.k_max {
        let p = 2 * scheme.n_k(k, abs_z) as u32 + 1;
        let (a, b) = terminant_pair(p, k, z)?;
        let denom = Complex64::new(0.0, 2.0 * PI * (k * k) as f64);
        let term = (a.value + b.value) / denom;
        terminants += term;
        err += (a.est_error + b.est_error) / denom.norm();
        last = term.norm();
        last_p = p;
    }
    let k_tail_estimate = last * scheme.k_max as f64 / (last_p as f64 + 1.0);
    let value = prefix + first - terminants;
    let rounding = 8.0 * f64::EPSILON * (prefix.norm() + first.norm());
    Ok(ImprovedValue {
        value,
        k_tail_estimate,
        est_error: err + rounding,
    })
}
