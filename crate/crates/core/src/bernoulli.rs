//! Bernoulli numbers, Bernoulli polynomials and the coefficients of the
//! asymptotic series.
//!
//! The table is generated once and is immutable afterwards, so it can be
//! shared freely between threads.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest index held by the default table.
pub const DEFAULT_MAX_INDEX: usize = 64;

/// Bernoulli numbers `B_0 ..= B_max_index` in binary64.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    values: Vec<f64>,
}

impl BernoulliTable {
    /// Builds the table up to and including `max_index`.
    ///
    /// Even-index values come from the tangent numbers `T_n`, via
    /// `B_{2n} = (-1)^{n-1} 2n T_n / (4^n (4^n - 1))`. The tangent-number
    /// recurrence only adds positive quantities, so each entry is accurate
    /// to a few ulps; the textbook convolution recurrence loses about one
    /// digit every few indices.
    pub fn new(max_index: usize) -> Self {
        let mut values = vec![0.0; max_index + 1];
        values[0] = 1.0;
        if max_index >= 1 {
            values[1] = -0.5;
        }
        let n_max = max_index / 2;
        let tangent = tangent_numbers(n_max);
        for n in 1..=n_max {
            let four_n = 4f64.powi(n as i32);
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            values[2 * n] = sign * (2 * n) as f64 * tangent[n] / (four_n * (four_n - 1.0));
        }
        Self { values }
    }

    /// Shared table with [`DEFAULT_MAX_INDEX`] entries.
    pub fn global() -> &'static BernoulliTable {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(|| BernoulliTable::new(DEFAULT_MAX_INDEX))
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Result<f64> {
        self.values.get(n).copied().ok_or_else(|| {
            Error::Range(format!(
                "Bernoulli index {n} beyond table maximum {}",
                self.max_index()
            ))
        })
    }

    /// Coefficients `C(n, k) B_k` of `B_n(x) = Σ_k C(n,k) B_k x^{n-k}`,
    /// ordered by ascending power of `x`.
    pub fn poly_coefficients(&self, n: usize) -> Result<Vec<f64>> {
        self.get(n)?;
        let mut coeffs = vec![0.0; n + 1];
        let mut binom = 1.0f64;
        for k in 0..=n {
            coeffs[n - k] = binom * self.values[k];
            binom = binom * ((n - k) as f64) / ((k + 1) as f64);
        }
        Ok(coeffs)
    }

    /// `B_n(x)` for `0 ≤ x ≤ 1`. Low orders use the monomial form; from
    /// [`FOURIER_FROM`] on, the monomial form cancels badly near `x = 1` and
    /// the Fourier series is used instead.
    pub fn poly(&self, n: usize, x: f64) -> Result<f64> {
        if n >= FOURIER_FROM {
            self.get(n)?;
            return Ok(fourier_poly(n, x));
        }
        let coeffs = self.poly_coefficients(n)?;
        Ok(horner(&coeffs, x))
    }
}

/// Order from which [`BernoulliTable::poly`] sums the Fourier series.
pub const FOURIER_FROM: usize = 12;

/// `B_n(x) = -2 n! / (2π)^n Σ_k cos(2πkx - nπ/2) / k^n`, `n ≥ 2`, `0 ≤ x ≤ 1`.
fn fourier_poly(n: usize, x: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let pref = (1..=n).fold(2.0, |acc, j| acc * j as f64 / two_pi);
    let terms = 10f64.powf(18.0 / n as f64).ceil() as usize;
    let mut sum = 0.0;
    for k in (1..=terms).rev() {
        let angle = two_pi * (k as f64 * x).fract();
        let phase = match n % 4 {
            0 => angle.cos(),
            1 => angle.sin(),
            2 => -angle.cos(),
            _ => -angle.sin(),
        };
        sum += phase * (k as f64).powi(-(n as i32));
    }
    -pref * sum
}

/// `T_1 ..= T_n` (index 0 unused), Brent–Harvey in-place recurrence.
fn tangent_numbers(n: usize) -> Vec<f64> {
    let mut t = vec![0.0f64; n + 1];
    if n == 0 {
        return t;
    }
    t[1] = 1.0;
    for k in 2..=n {
        t[k] = (k - 1) as f64 * t[k - 1];
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = (j - k) as f64 * t[j - 1] + (j - k + 2) as f64 * t[j];
        }
    }
    t
}

pub(crate) fn horner(ascending: &[f64], x: f64) -> f64 {
    ascending.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// `B_n` from the shared table.
pub fn bernoulli_number(n: usize) -> Result<f64> {
    BernoulliTable::global().get(n)
}

/// Bernoulli polynomial `B_n(x)` for `0 ≤ x ≤ 1`.
pub fn bernoulli_poly(n: usize, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "Bernoulli polynomial argument {x} outside [0, 1]"
        )));
    }
    BernoulliTable::global().poly(n, x)
}

/// Coefficient of `z^{-2n}` in the asymptotic series of `log G(z+1)`:
/// `B_{2n+2} / (2n (2n+1) (2n+2))`.
pub fn series_coefficient(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Range("series coefficients start at n = 1".into()));
    }
    let b = bernoulli_number(2 * n + 2)?;
    let m = 2.0 * n as f64;
    Ok(b / (m * (m + 1.0) * (m + 2.0)))
}

/// Coefficient of `z^{-2n}` in the series obtained after substituting the
/// Stirling series for `log Γ(z+1)`: `B_{2n+2} / (2n (2n+2))`.
pub fn composed_series_coefficient(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Range("series coefficients start at n = 1".into()));
    }
    let b = bernoulli_number(2 * n + 2)?;
    let m = 2.0 * n as f64;
    Ok(b / (m * (m + 2.0)))
}

/// Constants appearing in the expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    /// Logarithm of the Glaisher–Kinkelin constant.
    pub log_a: f64,
    /// Euler–Mascheroni constant.
    pub euler_gamma: f64,
}

pub const LOG_GLAISHER: f64 = 0.248_754_477_033_784_3;
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

impl Constants {
    pub const fn get() -> Self {
        Self {
            log_a: LOG_GLAISHER,
            euler_gamma: EULER_GAMMA,
        }
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::get()
    }
}

/// `ζ(2m)` from the Bernoulli table, `m ≥ 1`.
pub fn zeta_even(m: usize) -> Result<f64> {
    let b = bernoulli_number(2 * m)?;
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut scale = 0.5;
    for j in 1..=2 * m {
        scale *= two_pi / j as f64;
    }
    Ok(b.abs() * scale)
}
