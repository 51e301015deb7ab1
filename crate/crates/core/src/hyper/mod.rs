//! Terminant functions, the exponentially improved expansion and Stokes
//! multiplier profiles.

mod improved;
mod stokes;
mod terminant;

pub use improved::{
    exp_improved_log_barnes, ImprovedValue, TruncationMode, TruncationScheme, OPTIMAL_CAP,
};
pub use stokes::{stokes_profile, StokesSample, WINDOW};
pub use terminant::{
    terminant, terminant_erf_approx, terminant_polar, terminant_polar_with, terminant_with,
    TerminantEval, TerminantMethod,
};
