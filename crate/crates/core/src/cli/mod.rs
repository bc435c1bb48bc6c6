//! Command-line front end: `eval`, `scan`, `figure` and `verify`.
//!
//! Exit codes: 0 success, 1 failed verification, 2 invalid flags or input
//! combinations, 3 numerical failure, 4 I/O failure.

pub mod config;
pub mod figures;
pub mod verify;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::antiunruh::{self, RegionScan, ScanSpec, StepControl};
use crate::asymptotics::{self, Validity};
use crate::error::Error;
use crate::response::{self, Method, ResponseQuery, Sigma};
use crate::scenarios::{Motion, Scenario};
use crate::series::{self, SeriesConfig};
use crate::switching::{BandProfile, SwitchingFunction};

use config::{merge, Config};
use figures::Preset;
use verify::Fault;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Numerical(Error),
    Io(String),
    VerifyFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Io(_) => EXIT_IO,
            CliError::VerifyFailed => EXIT_VERIFY_FAILED,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "invalid input: {m}"),
            CliError::Numerical(e) => write!(f, "numerical failure: {e}"),
            CliError::Io(m) => write!(f, "i/o failure: {m}"),
            CliError::VerifyFailed => f.write_str("verification failed"),
        }
    }
}

/// Input-shaped library errors are usage errors, the rest are numerical.
impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_)
            | Error::Unsupported(_)
            | Error::ConvergenceGate { .. }
            | Error::InfraredDivergence(_) => CliError::Usage(e.to_string()),
            other => CliError::Numerical(other),
        }
    }
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", path.display()))
}

/// 17 significant digits, `NaN`, `inf`, `-inf`.
pub fn fmt_float(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:.16e}")
    }
}

#[derive(Debug, Parser)]
#[command(name = "unruh-lab", version, about = "Unruh-DeWitt detector responses and Anti-Unruh scans")]
pub struct Cli {
    /// INI configuration file; flags override its entries.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one response function as a JSON record.
    #[command(allow_negative_numbers = true)]
    Eval(EvalArgs),
    /// Classify a grid into Anti-Unruh regions, written as CSV.
    #[command(allow_negative_numbers = true)]
    Scan(ScanArgs),
    /// Generate the data table of a figure preset.
    Figure(FigureArgs),
    /// Run the invariant suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScenarioKind {
    Inertial,
    Accelerated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SwitchingKind {
    Gaussian,
    Bandlimited,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileKind {
    Flat,
    Triangular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodKind {
    Quadrature,
    Series,
    Asymptotic,
    Limit,
}

#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    #[arg(long, value_enum)]
    pub scenario: Option<ScenarioKind>,
    /// Spatial dimensions, 1 to 3.
    #[arg(long)]
    pub d: Option<u8>,
    /// Field mass.
    #[arg(long)]
    pub m: Option<f64>,
    /// IR momentum cutoff.
    #[arg(long = "lambda-ir")]
    pub lambda_ir: Option<f64>,
    #[arg(long, value_enum)]
    pub switching: Option<SwitchingKind>,
    /// Half-width of a band-limited switching spectrum.
    #[arg(long = "A")]
    pub a: Option<f64>,
    /// Band-limited spectrum shape.
    #[arg(long, value_enum)]
    pub profile: Option<ProfileKind>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long, conflicts_with = "t_kms")]
    pub beta: Option<f64>,
    #[arg(long = "t-kms")]
    pub t_kms: Option<f64>,
    /// Detector gap; negative for de-excitation.
    #[arg(long)]
    pub omega: Option<f64>,
    /// Interaction timescale, a positive number or "inf".
    #[arg(long)]
    pub sigma: Option<String>,
    #[arg(long, value_enum)]
    pub method: Option<MethodKind>,
    /// Relative tolerance of the frequency integral.
    #[arg(long = "rel-tol")]
    pub rel_tol: Option<f64>,
    /// Series truncation order.
    #[arg(long = "k-max")]
    pub k_max: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Grid axis `name=start:stop:count` or `name=v1,v2,...`; axes are
    /// omega, sigma, t_kms and m. Repeatable.
    #[arg(long)]
    pub grid: Vec<String>,
    /// Fallback Ω when the grid has no omega axis.
    #[arg(long)]
    pub omega: Option<f64>,
    /// Fallback σ when the grid has no sigma axis.
    #[arg(long)]
    pub sigma: Option<String>,
    /// Fallback T_KMS when the grid has no t_kms axis.
    #[arg(long = "t-kms")]
    pub t_kms: Option<f64>,
    /// Finite-difference step relative to β.
    #[arg(long = "rel-step")]
    pub rel_step: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub name: Preset,
    /// Output CSV; standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long = "inject-fault", value_enum, default_value = "none", hide = true)]
    pub inject_fault: Fault,
}

fn parse_value_enum<T: ValueEnum>(s: &str, key: &str) -> Result<T, CliError> {
    T::from_str(s, true).map_err(|_| CliError::Usage(format!("config key {key}: unknown value {s:?}")))
}

fn merge_enum<T: ValueEnum>(flag: Option<T>, cfg: &Config, keys: &[&str]) -> Result<Option<T>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    for k in keys {
        if let Some(v) = cfg.raw(k) {
            return parse_value_enum(v, k).map(Some);
        }
    }
    Ok(None)
}

fn parse_sigma(s: &str) -> Result<Sigma, CliError> {
    s.parse::<Sigma>().map_err(CliError::from)
}

/// Scenario settings after merging flags and config.
#[derive(Debug, Clone)]
struct Setup {
    motion: Motion,
    d: u8,
    mass: f64,
    ir_cutoff: f64,
    switching: SwitchingFunction,
    switching_kind: SwitchingKind,
    half_width: Option<f64>,
    profile: Option<ProfileKind>,
}

fn setup(a: &ScenarioArgs, cfg: &Config) -> Result<Setup, CliError> {
    let motion = match merge_enum(a.scenario, cfg, &["scenario"])?.unwrap_or(ScenarioKind::Inertial) {
        ScenarioKind::Inertial => Motion::InertialThermal,
        ScenarioKind::Accelerated => Motion::AcceleratedVacuum,
    };
    let d = merge(a.d, cfg, "d")?.unwrap_or(3);
    let mass = merge(a.m, cfg, "m")?.unwrap_or(0.0);
    let ir_cutoff = merge(a.lambda_ir, cfg, "lambda_ir")?.unwrap_or(0.0);
    let kind = merge_enum(a.switching, cfg, &["switching.family", "switching"])?.unwrap_or(SwitchingKind::Gaussian);
    let half_width = merge(a.a, cfg, "switching.a")?;
    let profile = merge_enum(a.profile, cfg, &["switching.profile"])?;
    let switching = match kind {
        SwitchingKind::Gaussian => {
            if half_width.is_some() || profile.is_some() {
                return Err(CliError::Usage("--A and --profile apply to band-limited switching only".into()));
            }
            SwitchingFunction::gaussian()
        }
        SwitchingKind::Bandlimited => {
            let p = match profile.unwrap_or(ProfileKind::Flat) {
                ProfileKind::Flat => BandProfile::Flat,
                ProfileKind::Triangular => BandProfile::Triangular,
            };
            SwitchingFunction::band_limited_with(half_width.unwrap_or(1.0), p)?
        }
    };
    if motion == Motion::AcceleratedVacuum && ir_cutoff > 0.0 {
        return Err(CliError::Usage(
            "accelerated motion with an IR cutoff is not stationary, so no KMS response exists".into(),
        ));
    }
    Scenario::new(motion, d, mass, ir_cutoff, 1.0)?;
    Ok(Setup {
        motion,
        d,
        mass,
        ir_cutoff,
        switching,
        switching_kind: kind,
        half_width,
        profile,
    })
}

fn beta_from(beta: Option<f64>, t_kms: Option<f64>, cfg: &Config) -> Result<f64, CliError> {
    let (beta, t_kms) = if beta.is_some() || t_kms.is_some() {
        (beta, t_kms)
    } else {
        (cfg.get::<f64>("beta")?, cfg.get::<f64>("t_kms")?)
    };
    match (beta, t_kms) {
        (Some(_), Some(_)) => Err(CliError::Usage("give either beta or t_kms, not both".into())),
        (Some(b), None) => Ok(b),
        (None, Some(t)) if t > 0.0 => Ok(1.0 / t),
        (None, Some(t)) => Err(CliError::Usage(format!("T_KMS must be positive, got {t}"))),
        (None, None) => Err(CliError::Usage("--beta or --t-kms is required".into())),
    }
}

#[derive(Debug, Serialize)]
struct EvalInputs {
    scenario: &'static str,
    d: u8,
    m: f64,
    lambda_ir: f64,
    beta: f64,
    t_kms: f64,
    omega: f64,
    sigma: serde_json::Value,
    switching: &'static str,
    #[serde(rename = "A", skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    profile: Option<&'static str>,
}

#[derive(Debug, Serialize)]
struct EvalRecord {
    inputs: EvalInputs,
    value: f64,
    error_estimate: Option<f64>,
    method: Method,
}

fn sigma_json(s: Sigma) -> serde_json::Value {
    match s {
        Sigma::Finite(v) => serde_json::json!(v),
        Sigma::Infinite => serde_json::json!("inf"),
    }
}

fn eval(a: &EvalArgs, cfg: &Config, warn: &mut dyn Write) -> Result<String, CliError> {
    let st = setup(&a.scenario, cfg)?;
    let beta = beta_from(a.beta, a.t_kms, cfg)?;
    let omega = merge(a.omega, cfg, "omega")?.ok_or_else(|| CliError::Usage("--omega is required".into()))?;
    let sigma = match merge(a.sigma.clone(), cfg, "sigma")? {
        Some(s) => parse_sigma(&s)?,
        None => Sigma::Infinite,
    };
    let method = merge_enum(a.method, cfg, &["method"])?.unwrap_or(MethodKind::Quadrature);
    let scenario = Scenario::new(st.motion, st.d, st.mass, st.ir_cutoff, beta)?;
    let mut q = ResponseQuery::new(omega, sigma, scenario, st.switching.clone());
    if let Some(t) = merge(a.rel_tol, cfg, "quad.rel_tol")? {
        q.quad.rel_tol = t;
    }
    q.validate()?;

    let (value, error_estimate, method) = match method {
        MethodKind::Quadrature => {
            let r = response::response_function(&q)?;
            (r.value, Some(r.error_estimate), r.method)
        }
        MethodKind::Limit => {
            if !sigma.is_infinite() {
                return Err(CliError::Usage("--method limit needs --sigma inf".into()));
            }
            let r = response::response_function(&q)?;
            (r.value, Some(r.error_estimate), Method::Limit)
        }
        MethodKind::Series => {
            let Sigma::Finite(s) = sigma else {
                return Err(CliError::Usage("--method series needs a finite --sigma".into()));
            };
            let massless3 = st.motion == Motion::InertialThermal && st.d == 3 && st.mass == 0.0 && st.ir_cutoff == 0.0;
            if !massless3 {
                return Err(CliError::Usage(
                    "--method series covers the massless inertial d=3 scenario only".into(),
                ));
            }
            let mut sc = SeriesConfig::default();
            if let Some(k) = merge(a.k_max, cfg, "series.k_max")? {
                sc.k_max = k;
            }
            let r = series::response_series(omega, s, beta, &st.switching, &sc)?;
            (r.value, Some(r.error_estimate), r.method)
        }
        MethodKind::Asymptotic => {
            if !(st.motion == Motion::AcceleratedVacuum && st.d == 1 && st.mass > 0.0 && sigma.is_infinite()) {
                return Err(CliError::Usage(
                    "--method asymptotic needs --scenario accelerated --d 1, m > 0 and --sigma inf".into(),
                ));
            }
            let large = match asymptotics::validity_region(omega, beta, st.mass) {
                Validity::LargeMass | Validity::Both => true,
                Validity::SmallMass => false,
                Validity::Neither => beta * st.mass >= 2.0 * std::f64::consts::PI,
            };
            let r = if large {
                asymptotics::response_large_mass(omega, beta, st.mass)?
            } else {
                asymptotics::response_small_mass(omega, beta, st.mass)?
            };
            if r.validity_warning {
                let which = if large { "large" } else { "small" };
                let _ = writeln!(warn, "warning: outside the {which}-mass regime; value is indicative only");
            }
            (r.value, None, Method::Asymptotic)
        }
    };
    let record = EvalRecord {
        inputs: EvalInputs {
            scenario: match st.motion {
                Motion::InertialThermal => "inertial",
                Motion::AcceleratedVacuum => "accelerated",
            },
            d: st.d,
            m: st.mass,
            lambda_ir: st.ir_cutoff,
            beta,
            t_kms: 1.0 / beta,
            omega,
            sigma: sigma_json(sigma),
            switching: match st.switching_kind {
                SwitchingKind::Gaussian => "gaussian",
                SwitchingKind::Bandlimited => "bandlimited",
            },
            a: st.half_width.or(match st.switching_kind {
                SwitchingKind::Bandlimited => Some(1.0),
                SwitchingKind::Gaussian => None,
            }),
            profile: match (st.switching_kind, st.profile) {
                (SwitchingKind::Bandlimited, Some(ProfileKind::Triangular)) => Some("triangular"),
                (SwitchingKind::Bandlimited, _) => Some("flat"),
                _ => None,
            },
        },
        value,
        error_estimate,
        method,
    };
    serde_json::to_string(&record).map_err(|e| CliError::Numerical(Error::Overflow(e.to_string())))
}

/// Axis values from `start:stop:count` or a comma list.
pub fn parse_axis_values(spec: &str) -> Result<Vec<String>, CliError> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(CliError::Usage("empty grid axis".into()));
    }
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.len() {
        1 => {
            let vals: Vec<String> = spec.split(',').map(|v| v.trim().to_string()).collect();
            if vals.iter().any(String::is_empty) {
                return Err(CliError::Usage(format!("empty value in grid axis {spec:?}")));
            }
            Ok(vals)
        }
        3 => {
            let num = |s: &str| -> Result<f64, CliError> {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("grid bound {s:?} is not a number")))
            };
            let (start, stop) = (num(parts[0])?, num(parts[1])?);
            let count: usize = parts[2]
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("grid count {:?} is not a count", parts[2])))?;
            if count == 0 {
                return Err(CliError::Usage("grid count must be at least 1".into()));
            }
            if count == 1 {
                return Ok(vec![start.to_string()]);
            }
            let h = (stop - start) / (count - 1) as f64;
            Ok((0..count)
                .map(|i| if i == count - 1 { stop } else { start + h * i as f64 })
                .map(|v| v.to_string())
                .collect())
        }
        _ => Err(CliError::Usage(format!(
            "grid axis {spec:?} is neither start:stop:count nor a comma list"
        ))),
    }
}

fn floats(vals: &[String], axis: &str) -> Result<Vec<f64>, CliError> {
    vals.iter()
        .map(|v| {
            v.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("{axis} value {v:?} is not a number")))
        })
        .collect()
}

fn axis_name(raw: &str) -> Result<&'static str, CliError> {
    match raw.trim().to_ascii_lowercase().replace('-', "_").as_str() {
        "omega" => Ok("omega"),
        "sigma" => Ok("sigma"),
        "t_kms" | "t" => Ok("t_kms"),
        "m" | "mass" => Ok("m"),
        other => Err(CliError::Usage(format!("unknown grid axis {other:?}"))),
    }
}

fn scan_spec(a: &ScanArgs, cfg: &Config) -> Result<ScanSpec, CliError> {
    let st = setup(&a.scenario, cfg)?;
    let mut axes: Vec<(&'static str, Vec<String>)> = Vec::new();
    let mut put = |name: &'static str, vals: Vec<String>| {
        axes.retain(|(n, _)| *n != name);
        axes.push((name, vals));
    };
    for (k, v) in cfg.section("grid") {
        put(axis_name(&k)?, parse_axis_values(&v)?);
    }
    for g in &a.grid {
        let (k, v) = g
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("grid spec {g:?} lacks '='")))?;
        put(axis_name(k)?, parse_axis_values(v)?);
    }
    if axes.is_empty() {
        return Err(CliError::Usage("empty grid: give at least one --grid axis".into()));
    }
    let axis = |name: &str| axes.iter().find(|(n, _)| *n == name).map(|(_, v)| v.clone());

    let mut spec = ScanSpec::new(st.motion, st.d, st.ir_cutoff, st.switching);
    spec.omega = match axis("omega") {
        Some(v) => floats(&v, "omega")?,
        None => vec![merge(a.omega, cfg, "omega")?.ok_or_else(|| CliError::Usage("no omega axis or --omega".into()))?],
    };
    spec.sigma = match axis("sigma") {
        Some(v) => v.iter().map(|s| parse_sigma(s)).collect::<Result<_, _>>()?,
        None => vec![match merge(a.sigma.clone(), cfg, "sigma")? {
            Some(s) => parse_sigma(&s)?,
            None => Sigma::Infinite,
        }],
    };
    spec.t_kms = match axis("t_kms") {
        Some(v) => floats(&v, "t_kms")?,
        None => vec![1.0 / beta_from(None, a.t_kms, cfg)?],
    };
    spec.mass = match axis("m") {
        Some(v) => floats(&v, "m")?,
        None => vec![st.mass],
    };
    if let Some(r) = merge(a.rel_step, cfg, "fd.rel_step")? {
        spec.step = StepControl { rel_step: r, ..spec.step };
    }
    spec.validate()?;
    Ok(spec)
}

pub fn write_scan_csv<W: Write>(scan: &RegionScan, out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["Omega", "sigma", "T_kms", "m", "dF_dT", "dTedr_dT", "label", "fd_err"])?;
    for c in &scan.cells {
        let sigma = match c.sigma {
            Sigma::Finite(s) => fmt_float(s),
            Sigma::Infinite => "inf".into(),
        };
        w.write_record([
            fmt_float(c.omega),
            sigma,
            fmt_float(c.t_kms),
            fmt_float(c.mass),
            fmt_float(c.df_dt),
            fmt_float(c.dtedr_dt),
            c.label.to_string(),
            fmt_float(c.fd_err),
        ])?;
    }
    w.flush()
}

fn write_file(path: &Path, f: impl FnOnce(&mut std::fs::File) -> std::io::Result<()>) -> Result<(), CliError> {
    let mut file = std::fs::File::create(path).map_err(io_err(path))?;
    f(&mut file).map_err(io_err(path))
}

fn dispatch(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let stdout_err = |e: std::io::Error| CliError::Io(format!("stdout: {e}"));
    match &cli.command {
        Command::Eval(a) => {
            let line = eval(a, &cfg, stderr)?;
            writeln!(stdout, "{line}").map_err(stdout_err)
        }
        Command::Scan(a) => {
            let spec = scan_spec(a, &cfg)?;
            let out: PathBuf = match &a.out {
                Some(p) => p.clone(),
                None => cfg
                    .raw("out")
                    .map(PathBuf::from)
                    .ok_or_else(|| CliError::Usage("--out is required".into()))?,
            };
            let scan = antiunruh::classify(&spec)?;
            write_file(&out, |f| write_scan_csv(&scan, f))
        }
        Command::Figure(a) => {
            let rows = figures::generate(a.name)?;
            match &a.out {
                Some(p) => write_file(p, |f| figures::write_csv(&rows, f)),
                None => figures::write_csv(&rows, stdout).map_err(stdout_err),
            }
        }
        Command::Verify(a) => {
            let report = verify::run(a.inject_fault);
            write!(stdout, "{report}").map_err(stdout_err)?;
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::VerifyFailed)
            }
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return EXIT_OK;
            }
            let text = e.render().to_string();
            let _ = writeln!(stderr, "{}", text.lines().next().unwrap_or("invalid arguments"));
            return EXIT_USAGE;
        }
    };
    match dispatch(&cli, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(CliError::VerifyFailed) => EXIT_VERIFY_FAILED,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("unruh-lab").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn floats_have_17_digits() {
        assert_eq!(fmt_float(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_float(f64::NAN), "NaN");
        let x = 0.123456789012345678;
        assert_eq!(fmt_float(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn axis_parsing() {
        assert_eq!(parse_axis_values("1:3:3").unwrap(), vec!["1", "2", "3"]);
        assert_eq!(parse_axis_values("0.04,1,inf").unwrap().len(), 3);
        assert!(parse_axis_values("").is_err());
        assert!(parse_axis_values("1:2:0").is_err());
        assert!(parse_axis_values("1:2").is_err());
    }

    #[test]
    fn eval_closed_form_record() {
        let (code, out, _) = call(&["eval", "--scenario", "inertial", "--d", "3", "--m", "0", "--beta", "1", "--omega", "1", "--sigma", "inf"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        let want = 1.0 / (2.0 * std::f64::consts::PI * (1f64.exp() - 1.0));
        assert!((v["value"].as_f64().unwrap() - want).abs() < 1e-12);
        for k in ["inputs", "value", "error_estimate", "method"] {
            assert!(v.get(k).is_some(), "{k}");
        }
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["eval", "--scenario", "accelerated", "--lambda-ir", "0.5", "--method", "quadrature", "--beta", "1", "--omega", "1"]).0, 2);
        assert_eq!(call(&["eval", "--beta", "1", "--t-kms", "1", "--omega", "1"]).0, 2);
        assert_eq!(call(&["eval", "--beta", "1"]).0, 2);
        assert_eq!(call(&["eval", "--bogus"]).0, 2);
        assert_eq!(call(&["figure", "fig9"]).0, 2);
        assert_eq!(call(&["scan", "--out", "/dev/null"]).0, 2);
    }

    #[test]
    fn negative_gap_accepted() {
        let (code, out, _) = call(&["eval", "--beta", "1", "--omega", "-1"]);
        assert_eq!(code, 0, "{out}");
    }
}
