//! Numerics for the logarithm of the Barnes G-function.
//!
//! The crate evaluates `log G(z + 1)` through its Bernoulli-number asymptotic
//! expansion, attaches certified bounds to the truncation remainder, checks
//! those bounds against quadrature oracles that compute the remainder
//! independently, and implements the exponentially improved (terminant)
//! expansion that resolves the Stokes phenomenon on `arg z = ±π/2`.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`bernoulli`] | Bernoulli numbers and polynomials, series coefficients, constants |
//! | [`special`] | complex log-gamma, dilogarithm, `E₁`, small-argument erf, Stokes variable |
//! | [`quadrature`] | Gauss–Legendre rules and an adaptive integrator |
//! | [`expansion`] | truncated expansion, error bounds, policy layer |
//! | [`oracle`] | remainder by quadrature of exact integral representations |
//! | [`hyper`] | terminant function, improved expansion, Stokes profiles |
//!
//! ```
//! use barnesg::{certified_eval, log_barnes_oracle, QuadraturePolicy, Complex64};
//!
//! let z = Complex64::new(3.0, 0.0);
//! let r = certified_eval(z, None).unwrap();
//! // G(4) = Γ(3)Γ(2)Γ(1) = 2
//! assert!((r.value.re - 2f64.ln()).abs() <= r.bound + 1e-14);
//!
//! let exact = log_barnes_oracle(z, &QuadraturePolicy::default()).unwrap();
//! assert!((exact.value.re - 2f64.ln()).abs() < 1e-10);
//! ```

pub mod bernoulli;
pub mod error;
pub mod expansion;
pub mod hyper;
pub mod oracle;
pub mod quadrature;
pub mod special;

pub use num_complex::Complex64;

pub use bernoulli::{
    bernoulli_number, bernoulli_poly, composed_series_coefficient, series_coefficient,
    BernoulliTable, Constants,
};
pub use error::{Error, Result};
pub use expansion::{
    certified_eval, composed_log_barnes, optimal_rotation_angle, rotation_bound, sector_bound,
    sector_factor, truncated_log_barnes, BoundReport, BoundSource, ExpansionResult,
};
pub use hyper::{
    exp_improved_log_barnes, stokes_profile, terminant, terminant_erf_approx, terminant_polar,
    terminant_polar_with, terminant_with, ImprovedValue, StokesSample, TerminantEval,
    TerminantMethod, TruncationMode, TruncationScheme,
};
pub use oracle::{
    log_barnes_oracle, remainder_double_integral, remainder_narrow, remainder_wide,
    remainder_wide_with, OracleValue, QuadraturePolicy, Representation, WideForm,
};
pub use special::{
    dilog, erf_small, exp_integral_e1, log_gamma, log_gamma_with, stokes_variable, LogGammaPolicy,
};

/// The README and the chapters of the guide in `book/`, compiled so their
/// code blocks run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/bernoulli.md")]
    mod bernoulli {}
    #[doc = include_str!("../../../book/src/expansion.md")]
    mod expansion {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/stokes.md")]
    mod stokes {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
