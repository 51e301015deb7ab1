//! Command-line frontend for `barnesg`: evaluation, bound sweeps, Stokes
//! profiles and terminant diagnostics, written as CSV or JSON-lines rows.
//!
//! Exit codes: 0 on success, 2 for usage and domain errors, 3 when an
//! accuracy target is missed or a reported bound is violated.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::io::Write;

use barnesg::expansion::applicable_bounds;
use barnesg::{
    certified_eval, exp_improved_log_barnes, log_barnes_oracle, remainder_narrow, remainder_wide,
    stokes_profile, terminant_erf_approx, terminant_polar_with, BoundSource, Complex64, Error,
    QuadraturePolicy, TerminantMethod, TruncationScheme,
};
use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};

pub mod output;

use output::{Format, Record, RowWriter, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ACCURACY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "barnesg",
    version,
    about = "Log Barnes G: expansion, bounds, Stokes smoothing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate log G(z+1) by the bounded expansion, the quadrature oracle or
    /// the exponentially improved expansion.
    #[command(allow_negative_numbers = true)]
    Eval(EvalArgs),
    /// Compare every applicable remainder bound with the oracle on a grid.
    #[command(allow_negative_numbers = true)]
    Bounds(BoundsArgs),
    /// Stokes multiplier profile across a Stokes line.
    #[command(allow_negative_numbers = true)]
    Stokes(StokesArgs),
    /// Terminant value by a chosen method.
    #[command(allow_negative_numbers = true)]
    Terminant(TerminantArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvalMethod {
    Asym,
    Oracle,
    Hyper,
}

impl EvalMethod {
    fn as_str(self) -> &'static str {
        match self {
            EvalMethod::Asym => "asym",
            EvalMethod::Oracle => "oracle",
            EvalMethod::Hyper => "hyper",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodChoice {
    Auto,
    Recurrence,
    ContinuedFraction,
    Quadrature,
    Erf,
}

impl MethodChoice {
    fn as_str(self) -> &'static str {
        match self {
            MethodChoice::Auto => "auto",
            MethodChoice::Recurrence => "recurrence",
            MethodChoice::ContinuedFraction => "continued_fraction",
            MethodChoice::Quadrature => "quadrature",
            MethodChoice::Erf => "erf",
        }
    }
}

/// A complex number given either by parts or in polar form.
#[derive(Debug, Clone, Copy, Default)]
struct PointFlags {
    re: Option<f64>,
    im: Option<f64>,
    abs: Option<f64>,
    arg: Option<f64>,
    arg_pi: Option<f64>,
}

impl PointFlags {
    /// `(modulus, argument)`; the argument is kept as given so that sheets
    /// beyond the principal one stay reachable.
    fn polar(&self, name: &str) -> Result<(f64, f64), Failure> {
        match (self.re, self.im, self.abs, self.arg, self.arg_pi) {
            (Some(re), im, None, None, None) => {
                let w = Complex64::new(re, im.unwrap_or(0.0));
                Ok((w.norm(), w.arg()))
            }
            (None, None, Some(abs), arg, arg_pi) => {
                let arg = match (arg, arg_pi) {
                    (Some(a), None) => a,
                    (None, Some(a)) => a * PI,
                    (None, None) => 0.0,
                    _ => return Err(usage(format!("give only one of --{name}-arg and --{name}-arg-pi"))),
                };
                if !(abs >= 0.0) {
                    return Err(usage(format!("--{name}-abs must be nonnegative")));
                }
                Ok((abs, arg))
            }
            _ => Err(usage(format!(
                "give either --{name}-re [--{name}-im] or --{name}-abs with --{name}-arg or --{name}-arg-pi"
            ))),
        }
    }

    fn cartesian(&self, name: &str) -> Result<Complex64, Failure> {
        if let (Some(re), im) = (self.re, self.im) {
            if self.abs.is_none() && self.arg.is_none() && self.arg_pi.is_none() {
                // keep the exact parts given rather than going through polar form
                return Ok(Complex64::new(re, im.unwrap_or(0.0)));
            }
        }
        let (abs, arg) = self.polar(name)?;
        Ok(Complex64::from_polar(abs, arg))
    }
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    z_re: Option<f64>,
    #[arg(long, requires = "z_re")]
    z_im: Option<f64>,
    #[arg(long, conflicts_with_all = ["z_re", "z_im"])]
    z_abs: Option<f64>,
    /// Argument of z in radians.
    #[arg(long, requires = "z_abs")]
    z_arg: Option<f64>,
    /// Argument of z in multiples of π.
    #[arg(long, requires = "z_abs", conflicts_with = "z_arg")]
    z_arg_pi: Option<f64>,
    #[arg(long, value_enum, default_value = "asym")]
    method: EvalMethod,
    /// Truncation index; for `hyper` it fixes every N_k (uniform scheme).
    #[arg(long)]
    n: Option<usize>,
    /// Number of terminant pairs for `hyper`.
    #[arg(long, default_value_t = 5)]
    k_max: usize,
    /// Exit with status 3 if the bound or error estimate exceeds this.
    #[arg(long)]
    max_error: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    /// Moduli of z, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    z_abs: Vec<f64>,
    /// Arguments of z in radians, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    theta: Vec<f64>,
    /// Arguments of z in multiples of π, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "theta"
    )]
    theta_pi: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    /// Defaults to `--n-min`.
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct StokesArgs {
    #[arg(long)]
    z_abs: f64,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long)]
    theta_min: f64,
    #[arg(long)]
    theta_max: f64,
    #[arg(long, default_value_t = 51)]
    theta_steps: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct TerminantArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    w_re: Option<f64>,
    #[arg(long, requires = "w_re")]
    w_im: Option<f64>,
    #[arg(long, conflicts_with_all = ["w_re", "w_im"])]
    w_abs: Option<f64>,
    /// Argument of w in radians; values beyond ±π select other sheets.
    #[arg(long, requires = "w_abs")]
    w_arg: Option<f64>,
    /// Argument of w in multiples of π.
    #[arg(long, requires = "w_abs", conflicts_with = "w_arg")]
    w_arg_pi: Option<f64>,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodChoice,
    /// Exit with status 3 if the error estimate exceeds this.
    #[arg(long)]
    max_error: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

/// A failed run: exit status and message for the error stream.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: String) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) | Error::Range(_) => EXIT_USAGE,
            Error::Accuracy { .. } | Error::Numerical(_) => EXIT_ACCURACY,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: format!("write failed: {e}"),
        }
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// exit status. Rows go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{shown}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{shown}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Eval(a) => eval(a, out),
        Command::Bounds(a) => bounds(a, out),
        Command::Stokes(a) => stokes(a, out),
        Command::Terminant(a) => terminant_cmd(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "barnesg: {}", f.message);
            f.code
        }
    }
}

fn check_max_error(limit: Option<f64>, error: f64) -> Result<(), Failure> {
    match limit {
        Some(m) if !(error <= m) => Err(Failure {
            code: EXIT_ACCURACY,
            message: format!("error {error:e} exceeds the requested {m:e}"),
        }),
        _ => Ok(()),
    }
}

fn eval(a: EvalArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let flags = PointFlags {
        re: a.z_re,
        im: a.z_im,
        abs: a.z_abs,
        arg: a.z_arg,
        arg_pi: a.z_arg_pi,
    };
    let z = flags.cartesian("z")?;
    let mut row = Record::new()
        .with("z_re", z.re)
        .with("z_im", z.im)
        .with("method", a.method.as_str())
        .with("n", a.n.map_or(Value::Missing, Value::from))
        .with(
            "k_max",
            if a.method == EvalMethod::Hyper {
                Value::from(a.k_max)
            } else {
                Value::Missing
            },
        );
    let error = match a.method {
        EvalMethod::Asym => {
            let r = certified_eval(z, a.n)?;
            row.push("value_re", r.value.re);
            row.push("value_im", r.value.im);
            row.push("error", r.bound);
            row.push("error_kind", "bound");
            row.push("bound_source", r.bound_source.as_str());
            row.push("n_used", r.n_trunc);
            r.bound
        }
        EvalMethod::Oracle => {
            let r = log_barnes_oracle(z, &QuadraturePolicy::default())?;
            row.push("value_re", r.value.re);
            row.push("value_im", r.value.im);
            row.push("error", r.est_error);
            row.push("error_kind", "est_error");
            row.push("bound_source", Value::Missing);
            row.push("n_used", Value::Missing);
            r.est_error
        }
        EvalMethod::Hyper => {
            let scheme = match a.n {
                Some(n) => TruncationScheme::uniform(n, a.k_max),
                None => TruncationScheme::optimal(a.k_max),
            };
            let r = exp_improved_log_barnes(z, &scheme)?;
            let error = r.est_error + r.k_tail_estimate;
            row.push("value_re", r.value.re);
            row.push("value_im", r.value.im);
            row.push("error", error);
            row.push("error_kind", "est_error");
            row.push("bound_source", Value::Missing);
            row.push("n_used", scheme.n_k(1, z.norm()));
            error
        }
    };
    RowWriter::new(out, a.format).write(&row)?;
    check_max_error(a.max_error, error)
}

const BOUND_COLUMNS: [BoundSource; 4] = [
    BoundSource::Sector,
    BoundSource::HalfAngleSecant,
    BoundSource::OptimalRotation,
    BoundSource::PositiveAxisSign,
];

fn bounds(a: BoundsArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let thetas: Vec<f64> = if !a.theta_pi.is_empty() {
        a.theta_pi.iter().map(|t| t * PI).collect()
    } else if !a.theta.is_empty() {
        a.theta.clone()
    } else {
        vec![0.0]
    };
    let n_max = a.n_max.unwrap_or(a.n_min);
    if a.n_min == 0 || n_max < a.n_min {
        return Err(usage(format!("bad truncation range {}..={n_max}", a.n_min)));
    }
    if let Some(&bad) = a.z_abs.iter().find(|r| !(**r > 0.0) || !r.is_finite()) {
        return Err(usage(format!(
            "--z-abs entries must be positive, got {bad}"
        )));
    }
    if let Some(&bad) = thetas.iter().find(|t| !(t.abs() < PI)) {
        return Err(usage(format!("θ = {bad} is not inside (-π, π)")));
    }
    let policy = QuadraturePolicy::default();
    let mut writer = RowWriter::new(out, a.format);
    let mut violations = 0;
    for &r in &a.z_abs {
        for &theta in &thetas {
            let z = Complex64::from_polar(r, theta);
            for n in a.n_min..=n_max {
                let oracle = if theta.abs() < 0.45 * PI {
                    remainder_narrow(z, n, &policy)?
                } else {
                    remainder_wide(z, n, &policy)?
                };
                let actual = oracle.value.norm();
                let reports = applicable_bounds(z, n)?;
                let mut row = Record::new()
                    .with("abs_z", r)
                    .with("theta", theta)
                    .with("n", n)
                    .with("z_re", z.re)
                    .with("z_im", z.im)
                    .with("remainder_abs", actual)
                    .with("oracle_error", oracle.est_error)
                    .with("representation", oracle.representation.as_str());
                for source in BOUND_COLUMNS {
                    let b = reports.iter().find(|b| b.source == source).map(|b| b.bound);
                    row.push(source.as_str(), b);
                }
                let rotation = reports.iter().find_map(|b| b.phi_star);
                row.push("phi_star", rotation);
                let best = reports
                    .iter()
                    .min_by(|x, y| x.bound.total_cmp(&y.bound))
                    .expect("at least one bound applies");
                row.push("best_bound", best.bound);
                row.push("best_source", best.source.as_str());
                row.push("ratio", best.bound / actual);
                writer.write(&row)?;
                if best.bound < actual - oracle.est_error {
                    violations += 1;
                }
            }
        }
    }
    if violations > 0 {
        return Err(Failure {
            code: EXIT_ACCURACY,
            message: format!("{violations} bound violations"),
        });
    }
    Ok(())
}

fn stokes(a: StokesArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if !(a.theta_min <= a.theta_max) {
        return Err(usage(format!(
            "--theta-min {} must not exceed --theta-max {}",
            a.theta_min, a.theta_max
        )));
    }
    if a.theta_steps == 0 {
        return Err(usage("--theta-steps must be at least 1".into()));
    }
    let thetas: Vec<f64> = if a.theta_steps == 1 {
        vec![a.theta_min]
    } else {
        let h = (a.theta_max - a.theta_min) / (a.theta_steps - 1) as f64;
        (0..a.theta_steps)
            .map(|i| {
                if i + 1 == a.theta_steps {
                    a.theta_max
                } else {
                    a.theta_min + h * i as f64
                }
            })
            .collect()
    };
    let samples = stokes_profile(a.z_abs, a.k, &thetas)?;
    let mut writer = RowWriter::new(out, a.format);
    for s in samples {
        let row = Record::new()
            .with("abs_z", a.z_abs)
            .with("k", s.k)
            .with("theta", s.theta)
            .with("n_k", s.n_k)
            .with("multiplier_re", s.multiplier.re)
            .with("multiplier_im", s.multiplier.im)
            .with("normalized_re", s.normalized.re)
            .with("normalized_im", s.normalized.im)
            .with("erf_prediction", s.erf_prediction);
        writer.write(&row)?;
    }
    Ok(())
}

fn terminant_cmd(a: TerminantArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let flags = PointFlags {
        re: a.w_re,
        im: a.w_im,
        abs: a.w_abs,
        arg: a.w_arg,
        arg_pi: a.w_arg_pi,
    };
    let (abs, arg) = flags.polar("w")?;
    let forced = match a.method {
        MethodChoice::Auto | MethodChoice::Erf => None,
        MethodChoice::Recurrence => Some(TerminantMethod::Recurrence),
        MethodChoice::ContinuedFraction => Some(TerminantMethod::ContinuedFraction),
        MethodChoice::Quadrature => Some(TerminantMethod::Quadrature),
    };
    let t = if a.method == MethodChoice::Erf {
        terminant_erf_approx(a.p, abs, arg)?
    } else {
        terminant_polar_with(a.p, abs, arg, forced)?
    };
    let row = Record::new()
        .with("p", a.p)
        .with("w_abs", abs)
        .with("w_arg", arg)
        .with("requested", a.method.as_str())
        .with("value_re", t.value.re)
        .with("value_im", t.value.im)
        .with("method", t.method.as_str())
        .with("est_error", t.est_error);
    RowWriter::new(out, a.format).write(&row)?;
    check_max_error(a.max_error, t.est_error)
}
