//! Command-line front end.
//!
//! Exit codes: 0 success (or slant), 1 not slant or a failed verification,
//! 2 usage and spec errors, 3 numerical or domain failures.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::curvekit::{
    frame_drift, synthesize, CurveError, CurveSpec, Frame, Vec3, DEFAULT_QUAD_TOL,
};
use crate::darboux::{
    curvature_identity_residuals, darboux_on_sphere, rotation_consistency, DarbouxError,
};
use crate::frenet::{frenet_at, FrenetError, FrenetProfile, FrenetSample, ProfileOptions};
use crate::indicatrix::{
    circle_residual, indicatrix_curvature, indicatrix_framed_points, normal_indicatrix,
    IndicatrixError,
};
use crate::numeric::gradient;
use crate::slant::{
    classify_profile, normal_derivative_residual, sigma_at, ClassifyOptions, SlantError,
    DEFAULT_AXIS_TOL, DEFAULT_SAMPLES, DEFAULT_SIGMA_TOL, MIN_SAMPLES,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "HELIXLAB_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "helixlab",
    version,
    about = "Frenet analysis and slant-helix classification of space curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frenet profile: frame, curvature, torsion and sigma on a grid.
    Analyze(RunArgs),
    /// Slant-helix report; exits 1 when the curve is not a slant helix.
    Classify(RunArgs),
    /// Integrate an intrinsic spec into a sampled curve.
    Synthesize(RunArgs),
    /// Principal normal indicatrix on the unit sphere.
    Indicatrix(RunArgs),
    /// Run the invariant checks and print a pass/fail table.
    Verify(RunArgs),
}

#[derive(Debug, Clone, clap::Args)]
pub struct RunArgs {
    /// Curve spec (JSON).
    pub spec: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SIGMA_TOL)]
    pub sigma_tol: f64,
    #[arg(long, default_value_t = DEFAULT_AXIS_TOL)]
    pub axis_tol: f64,
    #[arg(long, default_value_t = DEFAULT_QUAD_TOL)]
    pub quad_tol: f64,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Append Darboux columns to the indicatrix output.
    #[arg(long)]
    pub darboux: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A failure carrying its exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn numeric(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_NUMERIC,
            message: message.into(),
        }
    }
}

impl From<CurveError> for Failure {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::Spec(_) | CurveError::Parse { .. } | CurveError::WrongKind { .. } => {
                Failure::usage(e.to_string())
            }
            _ => Failure::numeric(e.to_string()),
        }
    }
}

impl From<FrenetError> for Failure {
    fn from(e: FrenetError) -> Self {
        match e {
            FrenetError::Curve(c) => c.into(),
            FrenetError::TooFewSamples { .. } => Failure::usage(e.to_string()),
            _ => Failure::numeric(e.to_string()),
        }
    }
}

impl From<SlantError> for Failure {
    fn from(e: SlantError) -> Self {
        match e {
            SlantError::Frenet(f) => f.into(),
            SlantError::TooFewSamples(_) => Failure::usage(e.to_string()),
            _ => Failure::numeric(e.to_string()),
        }
    }
}

impl From<IndicatrixError> for Failure {
    fn from(e: IndicatrixError) -> Self {
        match e {
            IndicatrixError::Frenet(f) => f.into(),
            IndicatrixError::Slant(s) => s.into(),
            IndicatrixError::TooFewSamples(_) => Failure::usage(e.to_string()),
            _ => Failure::numeric(e.to_string()),
        }
    }
}

impl From<DarbouxError> for Failure {
    fn from(e: DarbouxError) -> Self {
        match e {
            DarbouxError::Frenet(f) => f.into(),
            _ => Failure::numeric(e.to_string()),
        }
    }
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub spec: CurveSpec,
    pub classify: ClassifyOptions,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub darboux: bool,
}

impl RunConfig {
    pub fn load(args: &RunArgs) -> Result<Self, Failure> {
        if args.samples < MIN_SAMPLES {
            return Err(Failure::usage(format!(
                "--samples must be at least {MIN_SAMPLES}, got {}",
                args.samples
            )));
        }
        for (name, v) in [
            ("--sigma-tol", args.sigma_tol),
            ("--axis-tol", args.axis_tol),
            ("--quad-tol", args.quad_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Failure::usage(format!("{name} must be positive, got {v}")));
            }
        }
        let text = std::fs::read_to_string(&args.spec)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", args.spec.display())))?;
        let spec = CurveSpec::from_json(&text)
            .map_err(|e| Failure::usage(format!("{}: {e}", args.spec.display())))?;
        Ok(RunConfig {
            spec,
            classify: ClassifyOptions {
                n_samples: args.samples,
                sigma_tol: args.sigma_tol,
                axis_tol: args.axis_tol,
                profile: ProfileOptions {
                    quad_tol: args.quad_tol,
                    ..Default::default()
                },
            },
            out: args.out.clone(),
            format: args.format,
            darboux: args.darboux,
        })
    }
}

/// Fixed-width scientific notation with 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// Column-oriented numeric output shared by the CSV and JSON writers.
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| fmt_float(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => to_json(self),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn emit(config: &RunConfig, text: &str) -> Result<(), Failure> {
    match &config.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            match stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
            {
                // A closed pipe (e.g. `| head`) is not a failure of the analysis.
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(Failure::numeric(format!("cannot write output: {e}")))
                }
                _ => Ok(()),
            }
        }
    }
}

fn warn_gaps(profile: &FrenetProfile) {
    if !profile.gaps.is_empty() {
        eprintln!(
            "warning: {} of {} grid points skipped (degenerate frame)",
            profile.gaps.len(),
            profile.grid_len
        );
    }
}

fn frame_cells(f: &Frame) -> [f64; 9] {
    let (t, n, b) = (f.tangent, f.normal, f.binormal);
    [t.x, t.y, t.z, n.x, n.y, n.z, b.x, b.y, b.z]
}

const FRAME_COLUMNS: [&str; 9] = ["Tx", "Ty", "Tz", "Nx", "Ny", "Nz", "Bx", "By", "Bz"];

pub fn analyze_table(profile: &FrenetProfile) -> Table {
    let mut columns = vec!["t", "s", "x", "y", "z"];
    columns.extend(FRAME_COLUMNS);
    columns.extend(["kappa", "tau", "dkappa_ds", "dtau_ds", "sigma"]);
    let mut table = Table::new(&columns);
    for (s, fr) in profile.iter() {
        let p = fr.position;
        let mut row = vec![fr.t, s, p.x, p.y, p.z];
        row.extend(frame_cells(&fr.frame));
        row.extend([fr.kappa, fr.tau, fr.dkappa_ds, fr.dtau_ds, sigma_at(fr)]);
        table.rows.push(row);
    }
    table
}

pub fn cmd_analyze(config: &RunConfig) -> Result<i32, Failure> {
    let profile = crate::frenet::frenet_profile_with(
        &config.spec,
        config.classify.n_samples,
        &config.classify.profile,
    )?;
    warn_gaps(&profile);
    emit(
        config,
        &analyze_table(&profile).render(config.format.unwrap_or(Format::Csv)),
    )?;
    Ok(EXIT_OK)
}

pub fn cmd_classify(config: &RunConfig) -> Result<i32, Failure> {
    let o = &config.classify;
    let profile = crate::frenet::frenet_profile_with(&config.spec, o.n_samples, &o.profile)?;
    warn_gaps(&profile);
    let report = classify_profile(&profile, o.sigma_tol, o.axis_tol)?;
    let text = match config.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut table = Table::new(&["t", "s", "sigma", "defined"]);
            for p in &report.samples {
                table
                    .rows
                    .push(vec![p.t, p.s, p.sigma, if p.defined { 1.0 } else { 0.0 }]);
            }
            table.to_csv()
        }
    };
    emit(config, &text)?;
    Ok(if report.is_slant { EXIT_OK } else { EXIT_FALSE })
}

pub fn cmd_synthesize(config: &RunConfig) -> Result<i32, Failure> {
    let curve = synthesize(config.spec.as_intrinsic()?)?;
    let mut columns = vec!["s", "x", "y", "z"];
    columns.extend(FRAME_COLUMNS);
    columns.extend(["kappa", "tau"]);
    let mut table = Table::new(&columns);
    let frames = curve.frames.as_deref().unwrap_or_default();
    let kappas = curve.kappas.as_deref().unwrap_or_default();
    let taus = curve.taus.as_deref().unwrap_or_default();
    for i in 0..curve.len() {
        let p = curve.points[i];
        let mut row = vec![curve.params[i], p.x, p.y, p.z];
        row.extend(frame_cells(&frames[i]));
        row.extend([kappas[i], taus[i]]);
        table.rows.push(row);
    }
    emit(config, &table.render(config.format.unwrap_or(Format::Csv)))?;
    Ok(EXIT_OK)
}

pub fn cmd_indicatrix(config: &RunConfig) -> Result<i32, Failure> {
    let ind = normal_indicatrix(&config.spec, &config.classify)?;
    warn_gaps(&ind.profile);
    let mut columns = vec![
        "t",
        "s",
        "bx",
        "by",
        "bz",
        "kappa_beta",
        "k_g",
        "plane_offset",
    ];
    let darboux = if config.darboux {
        columns.extend(["darboux_k_g", "darboux_k_n", "tau_g", "phi"]);
        let points = indicatrix_framed_points(&ind.profile)?;
        Some(darboux_on_sphere(&points)?)
    } else {
        None
    };
    let mut table = Table::new(&columns);
    for (i, p) in ind.samples.iter().enumerate() {
        let mut row = vec![
            p.t,
            p.s,
            p.beta.x,
            p.beta.y,
            p.beta.z,
            p.kappa_beta,
            p.k_g,
            p.plane_offset,
        ];
        if let Some(ds) = &darboux {
            let d = &ds[i];
            row.extend([d.k_g, d.k_n, d.tau_g.unwrap_or(f64::NAN), d.phi]);
        }
        table.rows.push(row);
    }
    emit(config, &table.render(config.format.unwrap_or(Format::Csv)))?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "N/A",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    /// Measured residual; absent when not applicable.
    pub value: Option<f64>,
    pub tolerance: f64,
    pub note: Option<&'static str>,
}

impl Check {
    fn measured(name: &'static str, value: f64, tolerance: f64) -> Self {
        Check {
            name,
            status: if value <= tolerance {
                Status::Pass
            } else {
                Status::Fail
            },
            value: Some(value),
            tolerance,
            note: None,
        }
    }

    fn skipped(name: &'static str, tolerance: f64, note: &'static str) -> Self {
        Check {
            name,
            status: Status::NotApplicable,
            value: None,
            tolerance,
            note: Some(note),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub is_slant: bool,
    pub sigma_mean: f64,
    pub theta: f64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let verdict = if self.is_slant {
            "slant helix"
        } else {
            "not a slant helix"
        };
        let _ = writeln!(
            out,
            "verdict: {verdict} (sigma_mean = {})",
            fmt_float(self.sigma_mean)
        );
        let _ = writeln!(
            out,
            "{:<34} {:<6} {:>12} {:>10}",
            "check", "status", "value", "tolerance"
        );
        for c in &self.checks {
            let value = c
                .value
                .map_or_else(|| "-".to_string(), |v| format!("{v:.3e}"));
            let _ = write!(
                out,
                "{:<34} {:<6} {:>12} {:>10.0e}",
                c.name,
                c.status.label(),
                value,
                c.tolerance
            );
            if let Some(note) = c.note {
                let _ = write!(out, "  {note}");
            }
            out.push('\n');
        }
        out
    }
}

const FD_STEP: f64 = 1e-5;
const FRENET_EQ_TOL: f64 = 1e-5;
const FRAME_TOL: f64 = 1e-10;
const IDENTITY_TOL: f64 = 1e-8;
const ROUTE_TOL: f64 = 1e-10;
const KG_AGREE_TOL: f64 = 1e-6;
const TAU_G_TOL: f64 = 1e-6;
const CIRCLE_TOL: f64 = 1e-6;
const NOT_SLANT: &str = "not applicable (not a slant helix)";

/// Relative mismatch between finite-difference frame derivatives (per arc
/// length) and the Frenet equations.
fn frenet_equation_error(fr: &FrenetSample, dt: Vec3, dn: Vec3, db: Vec3) -> f64 {
    let (t, n, b) = (fr.tangent(), fr.normal(), fr.binormal());
    let scale = (fr.kappa * fr.kappa + fr.tau * fr.tau).sqrt();
    let e_t = (dt - n * fr.kappa).norm();
    let e_n = (dn - (b * fr.tau - t * fr.kappa)).norm();
    let e_b = (db + n * fr.tau).norm();
    e_t.max(e_n).max(e_b) / scale
}

/// Worst Frenet-equation residual over the profile. Analytic curves use
/// central differences in the parameter; intrinsic curves differentiate the
/// integrated frames along the grid.
pub fn frenet_equation_residual(
    spec: &CurveSpec,
    profile: &FrenetProfile,
    kappa_floor: f64,
) -> f64 {
    match spec {
        CurveSpec::Analytic(curve) => profile
            .samples
            .iter()
            .filter_map(|fr| {
                let lo = frenet_at(curve, fr.t - FD_STEP, kappa_floor).ok()?;
                let hi = frenet_at(curve, fr.t + FD_STEP, kappa_floor).ok()?;
                let k = 1.0 / (2.0 * FD_STEP * fr.speed);
                Some(frenet_equation_error(
                    fr,
                    (hi.tangent() - lo.tangent()) * k,
                    (hi.normal() - lo.normal()) * k,
                    (hi.binormal() - lo.binormal()) * k,
                ))
            })
            .fold(0.0, f64::max),
        CurveSpec::Intrinsic(_) => {
            let component = |f: &dyn Fn(&FrenetSample) -> Vec3| -> Vec<Vec3> {
                let vals: Vec<Vec3> = profile.samples.iter().map(f).collect();
                let d: Vec<Vec<f64>> = (0..3)
                    .map(|k| gradient(&profile.arc, &vals.iter().map(|v| v[k]).collect::<Vec<_>>()))
                    .collect();
                (0..vals.len())
                    .map(|i| Vec3::new(d[0][i], d[1][i], d[2][i]))
                    .collect()
            };
            let dt = component(&|fr| fr.tangent());
            let dn = component(&|fr| fr.normal());
            let db = component(&|fr| fr.binormal());
            profile
                .samples
                .iter()
                .enumerate()
                .map(|(i, fr)| frenet_equation_error(fr, dt[i], dn[i], db[i]))
                .fold(0.0, f64::max)
        }
    }
}

/// Runs every invariant check on one spec.
pub fn verify(spec: &CurveSpec, opts: &ClassifyOptions) -> Result<VerifyReport, Failure> {
    let ind = normal_indicatrix(spec, opts)?;
    let profile = &ind.profile;
    let report = classify_profile(profile, opts.sigma_tol, opts.axis_tol)?;
    let mut checks = Vec::new();

    let frames: Vec<Frame> = profile.samples.iter().map(|fr| fr.frame).collect();
    checks.push(Check::measured(
        "frame orthonormality",
        frame_drift(&frames),
        FRAME_TOL,
    ));
    checks.push(Check::measured(
        "Frenet equations",
        frenet_equation_residual(spec, profile, opts.profile.kappa_floor),
        FRENET_EQ_TOL,
    ));

    let mut routes = 0.0f64;
    let mut chain = 0.0f64;
    for fr in &profile.samples {
        let kb = indicatrix_curvature(fr)?;
        routes = routes.max((kb.vector - kb.closed_form).abs());
        let sigma = sigma_at(fr);
        chain = chain.max((kb.vector * kb.vector - 1.0 - sigma * sigma).abs());
    }
    checks.push(Check::measured(
        "kappa_beta routes agree",
        routes,
        ROUTE_TOL,
    ));
    checks.push(Check::measured(
        "kappa_beta^2 = 1 + sigma^2",
        chain,
        IDENTITY_TOL,
    ));

    let points = indicatrix_framed_points(profile)?;
    let darboux = darboux_on_sphere(&points)?;
    let [r_sum, r_cos, r_sin] = curvature_identity_residuals(&points, &darboux);
    checks.push(Check::measured(
        "Darboux kappa^2 = k_g^2 + k_n^2",
        r_sum,
        IDENTITY_TOL,
    ));
    checks.push(Check::measured(
        "Darboux k_g = kappa cos phi",
        r_cos,
        IDENTITY_TOL,
    ));
    checks.push(Check::measured(
        "Darboux k_n = kappa sin phi",
        r_sin,
        IDENTITY_TOL,
    ));
    let rotation = darboux
        .iter()
        .zip(&points)
        .map(|(d, p)| rotation_consistency(d, &p.frame))
        .fold(0.0, f64::max);
    checks.push(Check::measured(
        "Darboux frame rotation",
        rotation,
        IDENTITY_TOL,
    ));
    let k_n = darboux
        .iter()
        .map(|d| (d.k_n.abs() - 1.0).abs())
        .fold(0.0, f64::max);
    checks.push(Check::measured("indicatrix |k_n| = 1", k_n, IDENTITY_TOL));
    let k_g = darboux
        .iter()
        .zip(&ind.samples)
        .map(|(d, s)| (d.k_g - s.k_g).abs())
        .fold(0.0, f64::max);
    checks.push(Check::measured(
        "indicatrix k_g = Darboux k_g",
        k_g,
        KG_AGREE_TOL,
    ));
    if darboux.iter().all(|d| d.tau_g.is_some()) {
        let tau_g = darboux
            .iter()
            .filter_map(|d| d.tau_g)
            .map(f64::abs)
            .fold(0.0, f64::max);
        checks.push(Check::measured("indicatrix tau_g = 0", tau_g, TAU_G_TOL));
    } else {
        checks.push(Check::skipped(
            "indicatrix tau_g = 0",
            TAU_G_TOL,
            "not applicable (needs fifth derivatives of an analytic curve)",
        ));
    }

    if report.is_slant {
        checks.push(Check::measured(
            "sigma constant",
            report.sigma_spread,
            opts.sigma_tol,
        ));
        checks.push(Check::measured(
            "axis constant",
            report.axis_spread,
            opts.axis_tol,
        ));
        checks.push(Check::measured(
            "<N, d> constant",
            report.normal_angle_spread,
            opts.axis_tol,
        ));
        checks.push(Check::measured(
            "<N', d> = 0",
            normal_derivative_residual(&profile.samples, &report.axis),
            opts.axis_tol,
        ));
        checks.push(Check::measured(
            "indicatrix circle",
            circle_residual(&ind.samples, &report.axis, report.theta),
            CIRCLE_TOL,
        ));
    } else {
        checks.push(Check::skipped("sigma constant", opts.sigma_tol, NOT_SLANT));
        checks.push(Check::skipped("axis constant", opts.axis_tol, NOT_SLANT));
        checks.push(Check::skipped("<N, d> constant", opts.axis_tol, NOT_SLANT));
        checks.push(Check::skipped("<N', d> = 0", opts.axis_tol, NOT_SLANT));
        checks.push(Check::skipped("indicatrix circle", CIRCLE_TOL, NOT_SLANT));
    }

    Ok(VerifyReport {
        is_slant: report.is_slant,
        sigma_mean: report.sigma_mean,
        theta: report.theta,
        checks,
    })
}

pub fn cmd_verify(config: &RunConfig) -> Result<i32, Failure> {
    let report = verify(&config.spec, &config.classify)?;
    let text = match config.format {
        Some(Format::Json) => to_json(&report),
        _ => report.to_table(),
    };
    emit(config, &text)?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_FALSE })
}

type Handler = fn(&RunConfig) -> Result<i32, Failure>;

fn configure_threads() {
    let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    else {
        return;
    };
    if n > 0 {
        // Fails only if the pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

/// Runs one command and returns its exit code. Messages go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    let (args, cmd): (&RunArgs, Handler) = match &cli.command {
        Command::Analyze(a) => (a, cmd_analyze),
        Command::Classify(a) => (a, cmd_classify),
        Command::Synthesize(a) => (a, cmd_synthesize),
        Command::Indicatrix(a) => (a, cmd_indicatrix),
        Command::Verify(a) => (a, cmd_verify),
    };
    match RunConfig::load(args).and_then(|config| cmd(&config)) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
