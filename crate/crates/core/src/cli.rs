//! `loxhelix` command-line front end.
//!
//! Every subcommand accepts the same flags; a JSON `--config` file can supply any
//! of them, and flags win over the file. The quadrature tolerance falls back to
//! `LOXHELIX_TOL` and then to the library default.
//!
//! Exit codes: 0 on success, 2 on validation errors (with one
//! `error: <reason-code>: <detail>` line on stderr), 1 on internal failures.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::error::LoxError;
use crate::loxodrome::{
    length_report, right_helicoidal_solution, solve_loxodrome, AngleInput, LoxodromeProblem, SampledCurve,
    DEFAULT_SAMPLES,
};
use crate::oracle::{angle_profile, integrate_ode, numeric_length};
use crate::profile::{linspace, Domain, Family, ProfileCurve, Sign, UNIT_SPEED_TOL, VALIDATION_POINTS};
use crate::profile_spec::parse_profile;
use crate::quadrature::DEFAULT_TOL;
use crate::special::elliptic_f;
use crate::surface::{make_right_helicoidal, HelicoidalSurface};

pub const TOL_ENV: &str = "LOXHELIX_TOL";
pub const DEFAULT_DIM: usize = 4;
pub const DEFAULT_V_SAMPLES: usize = 33;
/// `verify` thresholds.
pub const ANGLE_TOL: f64 = 1e-6;
pub const ORACLE_TOL: f64 = 1e-7;
pub const LENGTH_REL_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Operation {
    Solve,
    Verify,
    Length,
    Elliptic,
    SampleSurface,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Everything a run can be configured with. All fields are optional so that a
/// config file and the flags can be merged field by field.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subcommand: Option<Operation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domain: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Sign>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angle: Option<AngleInput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<Sign>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v_range: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v_samples: Option<usize>,
}

impl RunConfig {
    /// Fields set in `over` replace those in `self`.
    pub fn merge(self, over: RunConfig) -> RunConfig {
        macro_rules! pick {
            ($($f:ident),*) => { RunConfig { $($f: over.$f.or(self.$f)),* } };
        }
        pick!(subcommand, family, right, profile, dim, domain, c, epsilon, angle, branch, u0, v0, u1, samples,
            output, format, tol, phi, k, v_range, v_samples)
    }
}

#[derive(Parser, Debug)]
#[command(name = "loxhelix", version, about = "Timelike loxodromes on Lorentzian helicoidal surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve for v(u) and export the sampled curve.
    Solve(RunArgs),
    /// Solve, then check the result against the independent oracle.
    Verify(RunArgs),
    /// Arc length of the solved loxodrome.
    Length(RunArgs),
    /// Incomplete elliptic integral of the first kind F(phi, k).
    Elliptic(RunArgs),
    /// Sample the surface embedding and metric on a (u, v) grid.
    SampleSurface(RunArgs),
}

#[derive(Args, Debug, Default)]
#[command(allow_negative_numbers = true)]
pub struct RunArgs {
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Surface family: I, II or III.
    #[arg(long)]
    pub family: Option<Family>,
    /// Right helicoidal surface (the designated coordinate must be constant).
    #[arg(long)]
    pub right: bool,
    /// Profile spec, e.g. "x1=const(0.6),x3=linear(1,0),xn=const(0)".
    #[arg(long)]
    pub profile: Option<String>,
    /// Ambient dimension n.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Profile domain "start,end"; defaults to the span of u0 and u1.
    #[arg(long, allow_hyphen_values = true)]
    pub domain: Option<String>,
    /// Pitch c.
    #[arg(long)]
    pub c: Option<f64>,
    /// Meridian sign ε (+1 or -1); inferred from the profile when omitted.
    #[arg(long)]
    pub epsilon: Option<i64>,
    #[arg(long, group = "angle")]
    pub phi0: Option<f64>,
    #[arg(long, group = "angle")]
    pub sinh_phi0: Option<f64>,
    #[arg(long, group = "angle")]
    pub cosh_phi0: Option<f64>,
    #[arg(long, group = "angle")]
    pub tanh_phi0: Option<f64>,
    #[arg(long, group = "angle")]
    pub coth_phi0: Option<f64>,
    /// +1 for the larger slope root, -1 for the smaller.
    #[arg(long)]
    pub branch: Option<i64>,
    #[arg(long)]
    pub u0: Option<f64>,
    #[arg(long)]
    pub v0: Option<f64>,
    #[arg(long)]
    pub u1: Option<f64>,
    /// Output grid size.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Quadrature tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Amplitude for `elliptic`.
    #[arg(long)]
    pub phi: Option<f64>,
    /// Modulus for `elliptic`.
    #[arg(long)]
    pub k: Option<f64>,
    /// v range "start,end" for `sample-surface`.
    #[arg(long, allow_hyphen_values = true)]
    pub v_range: Option<String>,
    #[arg(long)]
    pub v_samples: Option<usize>,
}

/// Failure with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub exit: i32,
    pub code: String,
    pub detail: String,
}

impl CliError {
    fn validation(code: &str, detail: impl Into<String>) -> Self {
        Self { exit: 2, code: code.into(), detail: detail.into() }
    }

    fn internal(code: &str, detail: impl Into<String>) -> Self {
        Self { exit: 1, code: code.into(), detail: detail.into() }
    }
}

impl From<LoxError> for CliError {
    fn from(e: LoxError) -> Self {
        Self { exit: if e.is_validation() { 2 } else { 1 }, code: e.code().into(), detail: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn pair(text: &str, what: &str) -> CliResult<[f64; 2]> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let parse = |s: &str| s.parse::<f64>().ok().filter(|v| v.is_finite());
    match parts.as_slice() {
        [a, b] => match (parse(a), parse(b)) {
            (Some(a), Some(b)) => Ok([a, b]),
            _ => Err(CliError::validation("invalid-arguments", format!("{what} must be two numbers: '{text}'"))),
        },
        _ => Err(CliError::validation("invalid-arguments", format!("{what} must be 'start,end': '{text}'"))),
    }
}

fn sign(value: i64, what: &str) -> CliResult<Sign> {
    Sign::try_from(value).map_err(|_| CliError::validation("invalid-sign", format!("{what} must be +1 or -1, got {value}")))
}

impl RunArgs {
    fn to_config(&self, subcommand: Operation) -> CliResult<RunConfig> {
        let angle = [
            self.phi0.map(AngleInput::Phi0),
            self.sinh_phi0.map(AngleInput::SinhPhi0),
            self.cosh_phi0.map(AngleInput::CoshPhi0),
            self.tanh_phi0.map(AngleInput::TanhPhi0),
            self.coth_phi0.map(AngleInput::CothPhi0),
        ]
        .into_iter()
        .flatten()
        .next();
        Ok(RunConfig {
            subcommand: Some(subcommand),
            family: self.family,
            right: self.right.then_some(true),
            profile: self.profile.clone(),
            dim: self.dim,
            domain: self.domain.as_deref().map(|d| pair(d, "--domain")).transpose()?,
            c: self.c,
            epsilon: self.epsilon.map(|e| sign(e, "--epsilon")).transpose()?,
            angle,
            branch: self.branch.map(|b| sign(b, "--branch")).transpose()?,
            u0: self.u0,
            v0: self.v0,
            u1: self.u1,
            samples: self.samples,
            output: self.output.clone(),
            format: self.format,
            tol: self.tol,
            phi: self.phi,
            k: self.k,
            v_range: self.v_range.as_deref().map(|d| pair(d, "--v-range")).transpose()?,
            v_samples: self.v_samples,
        })
    }
}

fn load_config(path: &PathBuf) -> CliResult<RunConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::validation("invalid-config", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::validation("invalid-config", format!("{}: {e}", path.display())))
}

fn env_tol() -> CliResult<Option<f64>> {
    match std::env::var(TOL_ENV) {
        Ok(text) => text
            .trim()
            .parse::<f64>()
            .map(Some)
            .map_err(|_| CliError::validation("invalid-tolerance", format!("{TOL_ENV}='{text}' is not a number"))),
        Err(_) => Ok(None),
    }
}

/// Flags over config file over `LOXHELIX_TOL` over the default.
pub fn resolve_config(args: &RunArgs, subcommand: Operation) -> CliResult<RunConfig> {
    let flags = args.to_config(subcommand)?;
    let file = match &args.config {
        Some(path) => load_config(path)?,
        None => RunConfig::default(),
    };
    let mut merged = file.merge(flags);
    if merged.tol.is_none() {
        merged.tol = Some(env_tol()?.unwrap_or(DEFAULT_TOL));
    }
    Ok(merged)
}

fn required<T: Clone>(value: &Option<T>, flag: &str) -> CliResult<T> {
    value.clone().ok_or_else(|| CliError::validation("missing-argument", format!("{flag} is required")))
}

/// Builds the surface described by `cfg` and reports the profile's unit-speed residual.
pub fn build_surface(cfg: &RunConfig) -> CliResult<(HelicoidalSurface, f64)> {
    let family = required(&cfg.family, "--family")?;
    let dim = cfg.dim.unwrap_or(DEFAULT_DIM);
    let c = required(&cfg.c, "--c")?;
    let spec = cfg.profile.clone().unwrap_or_default();
    let components = parse_profile(&spec, family, dim)?;
    let domain = match cfg.domain {
        Some([a, b]) => Domain::new(a, b)?,
        None => {
            let (u0, u1) = (required(&cfg.u0, "--u0")?, cfg.u1.or(cfg.u0).unwrap_or_default());
            let (a, b) = (u0.min(u1), u0.max(u1));
            Domain::new(a, if a == b { a + 1.0 } else { b })?
        }
    };
    let right = cfg.right.unwrap_or(false);
    let build = |eps: Sign| -> crate::error::Result<HelicoidalSurface> {
        if right {
            make_right_helicoidal(family, dim, components.clone(), eps, domain, c)
        } else {
            HelicoidalSurface::new(ProfileCurve::new(family, dim, components.clone(), eps, domain)?, c)
        }
    };
    let surface = match cfg.epsilon {
        Some(eps) => build(eps)?,
        None => match build(Sign::Plus) {
            Err(LoxError::NotUnitSpeed { .. }) => build(Sign::Minus)?,
            other => other?,
        },
    };
    let residual = surface.profile().max_unit_speed_residual(VALIDATION_POINTS);
    Ok((surface, residual))
}

pub fn build_problem(cfg: &RunConfig, surface: HelicoidalSurface) -> CliResult<LoxodromeProblem> {
    let angle = cfg.angle.ok_or_else(|| {
        CliError::validation("missing-argument", "one of --phi0/--sinh-phi0/--cosh-phi0/--tanh-phi0/--coth-phi0 is required")
    })?;
    let phi0 = angle.phi0()?;
    let problem = LoxodromeProblem::new(surface, phi0, required(&cfg.u0, "--u0")?, cfg.v0.unwrap_or(0.0),
        required(&cfg.u1, "--u1")?)?
    .with_branch(cfg.branch.unwrap_or(Sign::Plus))
    .with_samples(cfg.samples.unwrap_or(DEFAULT_SAMPLES))?
    .with_tolerance(cfg.tol.unwrap_or(DEFAULT_TOL))?;
    Ok(problem)
}

/// The right-helicoidal closed forms are used whenever the surface is right.
pub fn solve(problem: &LoxodromeProblem) -> CliResult<SampledCurve> {
    let curve = if problem.surface.is_right() {
        right_helicoidal_solution(problem)?
    } else {
        solve_loxodrome(problem)?
    };
    Ok(curve)
}

/// Number with 17 significant digits; non-finite values as `NaN`, `inf`, `-inf`.
pub fn fmt_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn json_num(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() { format!("{x:.16e}") } else { "null".into() };
    RawValue::from_string(text).expect("formatted floats are valid JSON")
}

pub fn curve_columns(dim: usize) -> Vec<String> {
    let mut cols = vec!["u".to_string(), "v".to_string()];
    cols.extend((1..=dim).map(|i| format!("x_{i}")));
    cols.extend(["radicand", "tangent_inner", "angle"].map(String::from));
    cols
}

fn curve_rows(curve: &SampledCurve) -> Vec<Vec<f64>> {
    curve
        .samples
        .iter()
        .map(|s| {
            let mut row = vec![s.u, s.v];
            row.extend_from_slice(s.point.coords());
            row.extend([s.radicand, s.tangent_inner, s.angle]);
            row
        })
        .collect()
}

fn write_csv(columns: &[String], rows: &[Vec<f64>]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::internal("io-error", e.to_string());
    w.write_record(columns).map_err(io)?;
    for row in rows {
        w.write_record(row.iter().map(|&x| fmt_num(x))).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::internal("io-error", e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::internal("io-error", e.to_string()))
}

#[derive(Serialize)]
struct JsonTable<'a, M: Serialize> {
    meta: M,
    columns: &'a [String],
    samples: Vec<Vec<Box<RawValue>>>,
}

fn write_json<M: Serialize>(meta: M, columns: &[String], rows: &[Vec<f64>]) -> CliResult<String> {
    let samples = rows.iter().map(|r| r.iter().map(|&x| json_num(x)).collect()).collect();
    let mut text = serde_json::to_string_pretty(&JsonTable { meta, columns, samples })
        .map_err(|e| CliError::internal("io-error", e.to_string()))?;
    text.push('\n');
    Ok(text)
}

#[derive(Serialize)]
struct CurveMeta {
    family: Family,
    dim: usize,
    epsilon: Sign,
    c: Box<RawValue>,
    right: bool,
    profile: String,
    phi0: Box<RawValue>,
    branch: Sign,
    case: String,
    u0: Box<RawValue>,
    v0: Box<RawValue>,
    u1: Box<RawValue>,
    samples: usize,
    tolerance: Box<RawValue>,
    max_unit_speed_residual: Box<RawValue>,
}

fn curve_meta(cfg: &RunConfig, p: &LoxodromeProblem, curve: &SampledCurve, residual: f64) -> CurveMeta {
    CurveMeta {
        family: p.surface.family(),
        dim: p.surface.dim(),
        epsilon: p.surface.epsilon(),
        c: json_num(p.surface.pitch()),
        right: p.surface.is_right(),
        profile: cfg.profile.clone().unwrap_or_default(),
        phi0: json_num(p.phi0),
        branch: p.branch,
        case: curve.case.to_string(),
        u0: json_num(p.u0),
        v0: json_num(p.v0),
        u1: json_num(p.u1),
        samples: curve.len(),
        tolerance: json_num(p.tolerance),
        max_unit_speed_residual: json_num(residual),
    }
}

/// Key/value report, written as two-column CSV or a flat JSON object.
#[derive(Default)]
struct Report {
    entries: Vec<(String, ReportValue)>,
}

enum ReportValue {
    Num(f64),
    Count(usize),
    Text(String),
    Flag(bool),
}

impl Report {
    fn num(&mut self, key: &str, x: f64) -> &mut Self {
        self.entries.push((key.into(), ReportValue::Num(x)));
        self
    }

    fn count(&mut self, key: &str, n: usize) -> &mut Self {
        self.entries.push((key.into(), ReportValue::Count(n)));
        self
    }

    fn text(&mut self, key: &str, t: impl Into<String>) -> &mut Self {
        self.entries.push((key.into(), ReportValue::Text(t.into())));
        self
    }

    fn flag(&mut self, key: &str, b: bool) -> &mut Self {
        self.entries.push((key.into(), ReportValue::Flag(b)));
        self
    }

    fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::internal("io-error", e.to_string());
                w.write_record(["key", "value"]).map_err(io)?;
                for (k, v) in &self.entries {
                    let value = match v {
                        ReportValue::Num(x) => fmt_num(*x),
                        ReportValue::Count(n) => n.to_string(),
                        ReportValue::Text(t) => t.clone(),
                        ReportValue::Flag(b) => b.to_string(),
                    };
                    w.write_record([k.as_str(), value.as_str()]).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::internal("io-error", e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::internal("io-error", e.to_string()))
            }
            Format::Json => {
                let mut out = String::from("{\n");
                for (i, (k, v)) in self.entries.iter().enumerate() {
                    let value = match v {
                        ReportValue::Num(x) => json_num(*x).get().to_string(),
                        ReportValue::Count(n) => n.to_string(),
                        ReportValue::Text(t) => serde_json::to_string(t).expect("strings serialize"),
                        ReportValue::Flag(b) => b.to_string(),
                    };
                    let comma = if i + 1 == self.entries.len() { "" } else { "," };
                    let _ = writeln!(out, "  {}: {value}{comma}", serde_json::to_string(k).expect("strings serialize"));
                }
                out.push_str("}\n");
                Ok(out)
            }
        }
    }
}

/// What a subcommand produced: text for the output and whether its checks passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

pub fn execute(cfg: &RunConfig) -> CliResult<Outcome> {
    let format = cfg.format.unwrap_or_default();
    let sub = cfg.subcommand.unwrap_or(Operation::Solve);
    if sub == Operation::Elliptic {
        let (phi, k) = (required(&cfg.phi, "--phi")?, required(&cfg.k, "--k")?);
        let value = elliptic_f(phi, k)?;
        let mut r = Report::default();
        r.num("phi", phi).num("k", k).num("F", value);
        return Ok(Outcome { text: r.render(format)?, passed: true });
    }

    let (surface, residual) = build_surface(cfg)?;
    eprintln!("unit-speed max residual: {}", fmt_num(residual));
    if residual > UNIT_SPEED_TOL {
        return Err(CliError::internal("profile-not-unit-speed", "validated profile drifted from unit speed"));
    }
    if sub == Operation::SampleSurface {
        return sample_surface(cfg, &surface, format);
    }

    let problem = build_problem(cfg, surface)?;
    let curve = solve(&problem)?;
    match sub {
        Operation::Solve => {
            let cols = curve_columns(problem.surface.dim());
            let rows = curve_rows(&curve);
            let text = match format {
                Format::Csv => write_csv(&cols, &rows)?,
                Format::Json => write_json(curve_meta(cfg, &problem, &curve, residual), &cols, &rows)?,
            };
            Ok(Outcome { text, passed: true })
        }
        Operation::Length => {
            let report = length_report(&problem, &curve)?;
            let mut r = Report::default();
            r.text("case", curve.case.to_string()).num("length", report.value()).num("numeric", report.numeric);
            r.num("closed_form", report.closed_form.unwrap_or(f64::NAN));
            Ok(Outcome { text: r.render(format)?, passed: true })
        }
        Operation::Verify => verify(&problem, &curve, residual, format),
        Operation::Elliptic | Operation::SampleSurface => unreachable!("handled above"),
    }
}

fn verify(problem: &LoxodromeProblem, curve: &SampledCurve, residual: f64, format: Format) -> CliResult<Outcome> {
    let angles = angle_profile(&problem.surface, curve)?;
    let oracle = integrate_ode(problem)?;
    let max_oracle_diff = curve
        .samples
        .iter()
        .zip(&oracle.samples)
        .map(|(a, b)| (a.v - b.v).abs())
        .fold(0.0, f64::max);
    let length = length_report(problem, curve)?;
    let sampled_length = if curve.len() >= 3 { numeric_length(&problem.surface, curve).ok() } else { None };
    let length_rel = sampled_length.map_or(f64::NAN, |l| (l - length.value()).abs() / length.value().abs().max(1e-300));
    let all_timelike = curve.all_timelike();

    let angle_ok = angles.max_abs_deviation <= ANGLE_TOL;
    let oracle_ok = max_oracle_diff <= ORACLE_TOL;
    let length_ok = sampled_length.is_none() || length_rel <= LENGTH_REL_TOL || length.value() == 0.0;
    let passed = angle_ok && oracle_ok && all_timelike && length_ok;

    let mut r = Report::default();
    r.text("case", curve.case.to_string())
        .num("phi0", problem.phi0)
        .count("samples", curve.len())
        .num("max_unit_speed_residual", residual)
        .num("max_abs_angle_deviation", angles.max_abs_deviation)
        .num("mean_abs_angle_deviation", angles.mean_abs_deviation)
        .count("skipped_samples", angles.skipped)
        .num("max_abs_oracle_difference", max_oracle_diff)
        .num("length", length.value())
        .num("sampled_length", sampled_length.unwrap_or(f64::NAN))
        .num("length_relative_difference", length_rel)
        .flag("all_tangents_timelike", all_timelike)
        .flag("passed", passed);
    Ok(Outcome { text: r.render(format)?, passed })
}

fn sample_surface(cfg: &RunConfig, surface: &HelicoidalSurface, format: Format) -> CliResult<Outcome> {
    let domain = surface.profile().domain();
    let us = linspace(domain.start, domain.end, cfg.samples.unwrap_or(DEFAULT_SAMPLES).max(2));
    let [va, vb] = cfg.v_range.unwrap_or([0.0, 1.0]);
    let vs = linspace(va, vb, cfg.v_samples.unwrap_or(DEFAULT_V_SAMPLES).max(2));
    let n = surface.dim();
    let mut cols = vec!["u".to_string(), "v".to_string()];
    cols.extend((1..=n).map(|i| format!("x_{i}")));
    cols.extend(["E", "F", "G"].map(String::from));
    let mut rows = Vec::with_capacity(us.len() * vs.len());
    for &u in &us {
        let m = surface.metric_coefficients(u)?;
        for &v in &vs {
            let mut row = vec![u, v];
            row.extend_from_slice(surface.embed(u, v)?.coords());
            row.extend([m.e, m.f, m.g]);
            rows.push(row);
        }
    }
    #[derive(Serialize)]
    struct Meta {
        family: Family,
        dim: usize,
        epsilon: Sign,
        c: Box<RawValue>,
        profile: String,
    }
    let text = match format {
        Format::Csv => write_csv(&cols, &rows)?,
        Format::Json => write_json(
            Meta {
                family: surface.family(),
                dim: n,
                epsilon: surface.epsilon(),
                c: json_num(surface.pitch()),
                profile: cfg.profile.clone().unwrap_or_default(),
            },
            &cols,
            &rows,
        )?,
    };
    Ok(Outcome { text, passed: true })
}

fn emit(cfg: &RunConfig, text: &str) -> CliResult<()> {
    match &cfg.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::internal("io-error", format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::internal("io-error", e.to_string()))
        }
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            let first = e.to_string();
            let first = first.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error: invalid-arguments: {first}");
            return 2;
        }
    };
    let (sub, args) = match &cli.command {
        Command::Solve(a) => (Operation::Solve, a),
        Command::Verify(a) => (Operation::Verify, a),
        Command::Length(a) => (Operation::Length, a),
        Command::Elliptic(a) => (Operation::Elliptic, a),
        Command::SampleSurface(a) => (Operation::SampleSurface, a),
    };
    let result = resolve_config(args, sub).and_then(|cfg| {
        let outcome = execute(&cfg)?;
        emit(&cfg, &outcome.text)?;
        Ok(outcome.passed)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => {
            eprintln!("error: verification-failed: oracle checks did not pass");
            1
        }
        Err(e) => {
            eprintln!("error: {}: {}", e.code, e.detail);
            e.exit
        }
    }
}
