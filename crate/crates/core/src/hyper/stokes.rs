//! Effective Stokes multipliers across `arg z = ±π/2`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::improved::optimal_n;
use super::terminant::terminant_polar;
use crate::error::{domain, Result};
use crate::special::erf_saturating;

/// Half-width of the θ window around each Stokes line, with a little slack
/// so that grids quoted to two decimals fit.
pub const WINDOW: f64 = 0.51;

/// One point of a smoothing profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesSample {
    pub theta: f64,
    pub k: usize,
    pub n_k: usize,
    /// Coefficient of `e^{±2πikz}` in the improved expansion.
    pub multiplier: Complex64,
    /// Multiplier divided by its limiting value `∓1/(2πik²)` beyond the line.
    pub normalized: Complex64,
    /// `½ ± ½ erf((θ ∓ π/2)√(πk|z|))`.
    pub erf_prediction: f64,
}

/// Multiplier profile of the `k`-th exponential at modulus `abs_z`, with
/// `N_k` chosen optimally. Angles must lie within [`WINDOW`] of `π/2` (upper
/// half plane) or of `-π/2` (lower half plane).
pub fn stokes_profile(abs_z: f64, k: usize, thetas: &[f64]) -> Result<Vec<StokesSample>> {
    if !(abs_z >= 1.5) || !abs_z.is_finite() {
        return Err(domain(format!(
            "stokes profile needs |z| ≥ 1.5, got {abs_z}"
        )));
    }
    if k == 0 {
        return Err(domain("stokes profile needs k ≥ 1"));
    }
    let n_k = optimal_n(k, abs_z);
    let p = 2 * n_k as u32 + 1;
    let abs_w = 2.0 * PI * k as f64 * abs_z;
    let kk = (k * k) as f64;
    let limit = Complex64::new(0.0, 2.0 * PI * kk).inv();
    let rate = (PI * k as f64 * abs_z).sqrt();
    thetas
        .iter()
        .map(|&theta| {
            if (theta - FRAC_PI_2).abs() <= WINDOW {
                let t = terminant_polar(p, abs_w, theta + FRAC_PI_2)?.value;
                Ok(StokesSample {
                    theta,
                    k,
                    n_k,
                    multiplier: -t * limit,
                    normalized: t,
                    erf_prediction: 0.5 + 0.5 * erf_saturating((theta - FRAC_PI_2) * rate),
                })
            } else if (theta + FRAC_PI_2).abs() <= WINDOW {
                let t = terminant_polar(p, abs_w, theta - FRAC_PI_2)?.value;
                Ok(StokesSample {
                    theta,
                    k,
                    n_k,
                    multiplier: -t * limit,
                    normalized: -t,
                    erf_prediction: 0.5 - 0.5 * erf_saturating((theta + FRAC_PI_2) * rate),
                })
            } else {
                Err(domain(format!(
                    "θ = {theta} is not within {WINDOW} of a Stokes line"
                )))
            }
        })
        .collect()
}
