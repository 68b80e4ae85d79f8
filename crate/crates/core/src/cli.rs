//! Command-line front end. Every subcommand writes either JSON (with a
//! `schema_version` field), CSV with a header row, or a plain-text PPM.
//! Output is a pure function of the flags.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{self, Bound, BoundsError, Dominant, StateDistribution};
use crate::oracle::{self, OracleError};
use crate::ortho::{self, Edge, OrthoError};
use crate::spectrum::{self, BoseHubbardParams, Spectrum, SpectrumError};
use crate::speed::{self, SpeedError};

pub const SCHEMA_VERSION: u32 = 1;
/// Weights further than this from normalization trigger a warning.
pub const RENORMALIZE_WARN_TOL: f64 = 1e-9;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_STATIONARY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "qutrit-qsl",
    version,
    about = "Quantum speed limits and orthogonality times for qutrits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct StateArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub r1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub r2: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub r3: f64,
    /// Level spacing ratio omega32 / omega21.
    #[arg(long, allow_negative_numbers = true)]
    pub omega: f64,
    /// Lower transition frequency; times are reported in units of
    /// 1/omega21 when omitted.
    #[arg(long, default_value_t = 1.0)]
    pub omega21: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapFormat {
    Csv,
    Json,
    Ppm,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy statistics, alpha/beta and the dominant bound of a state.
    Bounds {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dominant-bound map over the (r2, r3) plane.
    RegionMap {
        #[arg(long)]
        omega: f64,
        #[arg(long, default_value_t = speed::DEFAULT_GRID)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MapFormat::Csv)]
        format: MapFormat,
    },
    /// Area of each region as a function of Omega (log-spaced).
    Areas {
        #[arg(long, default_value_t = 0.01)]
        omega_min: f64,
        #[arg(long, default_value_t = 100.0)]
        omega_max: f64,
        #[arg(long, default_value_t = 41)]
        steps: usize,
        #[arg(long, default_value_t = speed::DEFAULT_GRID)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reachability and first orthogonality time of a state, with its speed.
    Ortho {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interior orthogonality curve and its speed for one Omega.
    Curve {
        #[arg(long)]
        omega: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Speed along one edge of the central triangle.
    EdgeSpeed {
        #[arg(long)]
        edge: Edge,
        #[arg(long)]
        omega: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extended Bose-Hubbard dimer spectrum, or an Omega surface with --map.
    BoseHubbard {
        #[arg(long, default_value_t = 1.0)]
        j: f64,
        #[arg(long, default_value_t = 0.0)]
        k: f64,
        #[arg(long, default_value_t = 1.0)]
        u: f64,
        #[arg(long)]
        map: bool,
        #[arg(long, default_value_t = 3.0)]
        jmax: f64,
        #[arg(long, default_value_t = 3.0)]
        kmax: f64,
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Relative tolerance for flagging the Omega = 1/2, 1, 2 level curves.
        #[arg(long, default_value_t = 0.01)]
        level_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the closed-form first orthogonality time with a direct scan.
    Verify {
        #[command(flatten)]
        state: StateArgs,
        /// Scan horizon in units of 1/omega21 (default 200 pi).
        #[arg(long)]
        t_max: Option<f64>,
        /// Coarse scan step (default: 1/20 of the fastest period).
        #[arg(long)]
        step: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("stationary state: {0}")]
    Stationary(String),
    #[error("{0}")]
    Failed(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Stationary(_) => EXIT_STATIONARY,
            CliError::Failed(_) | CliError::Io(_) => EXIT_FAILURE,
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::StationaryState => CliError::Stationary(e.to_string()),
            BoundsError::InvalidState(_) | BoundsError::NotNormalized { .. } | BoundsError::OutOfRange { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<OrthoError> for CliError {
    fn from(e: OrthoError) -> Self {
        match e {
            OrthoError::BadOmega(_) | OrthoError::TooFewSamples | OrthoError::OutOfInterval { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SpeedError> for CliError {
    fn from(e: SpeedError) -> Self {
        match e {
            SpeedError::Bounds(b) => b.into(),
            SpeedError::Ortho(o) => o.into(),
            SpeedError::InadmissibleOmega { .. } | SpeedError::OutOfRange(_) | SpeedError::BadResolution => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

impl StateArgs {
    fn state(&self) -> Result<StateDistribution, CliError> {
        let sum = self.r1 + self.r2 + self.r3;
        if (sum - 1.0).abs() > RENORMALIZE_WARN_TOL {
            eprintln!("warning: weights sum to {sum}; renormalizing");
        }
        Ok(StateDistribution::normalized(self.r1, self.r2, self.r3)?)
    }

    fn spectrum(&self) -> Result<Spectrum, CliError> {
        Ok(Spectrum::new(self.omega21, self.omega)?)
    }
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    schema_version: u32,
    #[serde(flatten)]
    body: T,
}

fn json<T: Serialize>(body: T) -> Result<Vec<u8>, CliError> {
    let mut s = serde_json::to_string_pretty(&Envelope {
        schema_version: SCHEMA_VERSION,
        body,
    })?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn csv_rows<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    w.into_inner().map_err(|e| CliError::Failed(e.to_string()))
}

#[derive(Serialize)]
struct StateEcho {
    r1: f64,
    r2: f64,
    r3: f64,
    #[serde(rename = "Omega")]
    omega: f64,
    omega21: f64,
}

fn echo(state: &StateDistribution, spec: &Spectrum) -> StateEcho {
    StateEcho {
        r1: state.r1(),
        r2: state.r2(),
        r3: state.r3(),
        omega: spec.omega(),
        omega21: spec.omega21(),
    }
}

fn cmd_bounds(args: &StateArgs) -> Result<Vec<u8>, CliError> {
    let state = args.state()?;
    let spec = args.spectrum()?;
    let report = bounds::qsl_report(&state, &spec)?;
    #[derive(Serialize)]
    struct Out {
        input: StateEcho,
        effective_qubit: bool,
        #[serde(flatten)]
        report: bounds::QslReport,
    }
    json(Out {
        input: echo(&state, &spec),
        effective_qubit: state.is_effective_qubit() || spec.is_upper_degenerate(bounds::DEGENERACY_TOL),
        report,
    })
}

fn color(label: &Option<Dominant>) -> [u8; 3] {
    match label {
        None => [255, 255, 255],
        Some(Dominant::Unique(Bound::Mt)) => [0, 160, 0],
        Some(Dominant::Unique(Bound::Ml)) => [255, 140, 0],
        Some(Dominant::Unique(Bound::MlStar)) => [30, 90, 220],
        Some(Dominant::Tie(_)) => [128, 128, 128],
    }
}

/// P3 raster, top row = largest r3.
pub fn map_to_ppm(grid: &speed::MapGrid) -> String {
    let n = grid.n;
    let mut s = format!("P3\n{n} {n}\n255\n");
    for row in (0..n).rev() {
        let line: Vec<String> = (0..n)
            .map(|col| {
                let [r, g, b] = color(&grid.cell(row, col).label);
                format!("{r} {g} {b}")
            })
            .collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}

fn cmd_region_map(omega: f64, n: usize, format: MapFormat) -> Result<Vec<u8>, CliError> {
    let grid = speed::region_map(omega, n)?;
    match format {
        MapFormat::Ppm => Ok(map_to_ppm(&grid).into_bytes()),
        MapFormat::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                r2: f64,
                r3: f64,
                label: &'a str,
            }
            csv_rows(grid.cells.iter().filter_map(|c| {
                c.label.as_ref().map(|l| Row {
                    r2: c.r2,
                    r3: c.r3,
                    label: l.label(),
                })
            }))
        }
        MapFormat::Json => {
            #[derive(Serialize)]
            struct Out {
                #[serde(rename = "Omega")]
                omega: f64,
                n: usize,
                areas: speed::AreaReport,
                labels: Vec<Option<&'static str>>,
            }
            json(Out {
                omega,
                n,
                areas: grid.areas(),
                labels: grid.cells.iter().map(|c| c.label.as_ref().map(|l| l.label())).collect(),
            })
        }
    }
}

fn cmd_areas(omega_min: f64, omega_max: f64, steps: usize, n: usize) -> Result<Vec<u8>, CliError> {
    if !(omega_min > 0.0 && omega_max >= omega_min && steps >= 1) {
        return Err(CliError::Usage("need 0 < omega-min <= omega-max and steps >= 1".into()));
    }
    let omegas = speed::log_spaced(omega_min, omega_max, steps);
    let reports = speed::area_sweep(&omegas, n)?;
    #[derive(Serialize)]
    struct Row {
        omega: f64,
        f_mt: f64,
        f_ml: f64,
        f_ml_star: f64,
    }
    csv_rows(reports.into_iter().map(|a| Row {
        omega: a.omega,
        f_mt: a.f_mt,
        f_ml: a.f_ml,
        f_ml_star: a.f_ml_star,
    }))
}

fn cmd_ortho(args: &StateArgs) -> Result<Vec<u8>, CliError> {
    let state = args.state()?;
    let spec = args.spectrum()?;
    let (orthogonality, certificate) = ortho::certified_orthogonality(&state, &spec)?;
    let speed = if orthogonality.reachable.is_reached() {
        Some(speed::speed(&state, &spec)?)
    } else {
        None
    };
    #[derive(Serialize)]
    struct Out {
        input: StateEcho,
        orthogonality: ortho::OrthogonalityResult,
        certificate: Option<oracle::Certificate>,
        speed: Option<speed::SpeedSample>,
    }
    json(Out {
        input: echo(&state, &spec),
        orthogonality,
        certificate,
        speed,
    })
}

fn cmd_curve(omega: f64, samples: usize) -> Result<Vec<u8>, CliError> {
    let pts = speed::speed_curve(omega, samples)?;
    #[derive(Serialize)]
    struct Row {
        r2: f64,
        r3: f64,
        tau1: f64,
        s: f64,
    }
    csv_rows(pts.into_iter().map(|p| Row {
        r2: p.r2,
        r3: p.r3,
        tau1: p.tau1,
        s: p.s,
    }))
}

fn cmd_edge_speed(edge: Edge, omega: f64, samples: usize) -> Result<Vec<u8>, CliError> {
    if samples == 0 {
        return Err(CliError::Usage("samples must be positive".into()));
    }
    #[derive(Serialize)]
    struct Row {
        r: f64,
        s: f64,
        bound: &'static str,
    }
    let rows = (1..=samples)
        .map(|i| {
            let r = 0.5 * i as f64 / (samples + 1) as f64;
            speed::edge_speed_detail(edge, r, omega).map(|e| Row {
                r,
                s: e.s,
                bound: e.dominant.label(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    csv_rows(rows)
}

const LEVEL_CURVES: [f64; 3] = [0.5, 1.0, 2.0];

fn cmd_bose_hubbard(j: f64, k: f64, u: f64) -> Result<Vec<u8>, CliError> {
    let p = BoseHubbardParams::new(j, k, u)?;
    let levels = spectrum::bose_hubbard_levels(p);
    let closed = spectrum::bose_hubbard_omega(p);
    let from_levels = spectrum::spectrum_from_levels(levels.levels).ok();
    #[derive(Serialize)]
    struct Out {
        params: BoseHubbardParams,
        levels: spectrum::RawLevels,
        branch: spectrum::Branch,
        crossing: bool,
        #[serde(rename = "Omega")]
        omega: f64,
        omega21: Option<f64>,
        #[serde(rename = "Omega_from_levels")]
        omega_from_levels: Option<f64>,
    }
    json(Out {
        params: p,
        levels: levels.levels,
        branch: levels.branch,
        crossing: levels.is_crossing(),
        omega: closed.omega,
        omega21: from_levels.map(|s| s.omega21()),
        omega_from_levels: from_levels.map(|s| s.omega()),
    })
}

fn cmd_bose_hubbard_map(u: f64, jmax: f64, kmax: f64, n: usize, level_tol: f64) -> Result<Vec<u8>, CliError> {
    if n < 2 || !(jmax > 0.0 && kmax >= 0.0) {
        return Err(CliError::Usage("need n >= 2, jmax > 0, kmax >= 0".into()));
    }
    #[derive(Serialize)]
    struct Row {
        j: f64,
        k: f64,
        u: f64,
        omega: f64,
        branch: &'static str,
        level_curve: String,
    }
    let mut rows = Vec::with_capacity(n * n);
    for a in 0..n {
        let j = jmax * (a + 1) as f64 / n as f64;
        for b in 0..n {
            let k = kmax * b as f64 / (n - 1) as f64;
            let p = BoseHubbardParams::new(j, k, u)?;
            let o = spectrum::bose_hubbard_omega(p);
            let level_curve = LEVEL_CURVES
                .iter()
                .find(|&&w| (o.omega - w).abs() <= level_tol * w)
                .map(|w| w.to_string())
                .unwrap_or_default();
            rows.push(Row {
                j,
                k,
                u,
                omega: o.omega,
                branch: o.branch.label(),
                level_curve,
            });
        }
    }
    csv_rows(rows)
}

fn cmd_verify(args: &StateArgs, t_max: Option<f64>, step: Option<f64>) -> Result<Vec<u8>, CliError> {
    let state = args.state()?;
    let spec = args.spectrum()?;
    let analytic = ortho::orthogonality(&state, &spec)?;
    let t_max = t_max.unwrap_or(200.0 * std::f64::consts::PI) / spec.omega21();
    let step = step.unwrap_or_else(|| oracle::max_step(&spec));
    let found = oracle::first_zero(&state, &spec, t_max, step)?;
    let (abs_diff, rel_diff) = match (analytic.tau1, found) {
        (Some(a), Some(b)) => (Some((a - b).abs()), Some((a - b).abs() / a)),
        _ => (None, None),
    };
    let agree = match (analytic.tau1, found) {
        (Some(_), Some(_)) => rel_diff.is_some_and(|r| r <= 1e-9),
        (None, None) => true,
        // The analytic time may lie beyond the scan horizon.
        (Some(a), None) => a > t_max,
        (None, Some(_)) => false,
    };
    #[derive(Serialize)]
    struct Out {
        input: StateEcho,
        reachable: ortho::Reachability,
        analytic_tau1: Option<f64>,
        oracle_tau1: Option<f64>,
        abs_diff: Option<f64>,
        rel_diff: Option<f64>,
        t_max: f64,
        step: f64,
        agree: bool,
    }
    json(Out {
        input: echo(&state, &spec),
        reachable: analytic.reachable,
        analytic_tau1: analytic.tau1,
        oracle_tau1: found,
        abs_diff,
        rel_diff,
        t_max,
        step,
        agree,
    })
}

/// Runs one subcommand, returning the bytes it emits and where they go.
pub fn render(cmd: &Command) -> Result<(Vec<u8>, Option<PathBuf>), CliError> {
    let (bytes, out) = match cmd {
        Command::Bounds { state, out } => (cmd_bounds(state)?, out),
        Command::RegionMap { omega, n, out, format } => (cmd_region_map(*omega, *n, *format)?, out),
        Command::Areas {
            omega_min,
            omega_max,
            steps,
            n,
            out,
        } => (cmd_areas(*omega_min, *omega_max, *steps, *n)?, out),
        Command::Ortho { state, out } => (cmd_ortho(state)?, out),
        Command::Curve { omega, samples, out } => (cmd_curve(*omega, *samples)?, out),
        Command::EdgeSpeed {
            edge,
            omega,
            samples,
            out,
        } => (cmd_edge_speed(*edge, *omega, *samples)?, out),
        Command::BoseHubbard {
            j,
            k,
            u,
            map,
            jmax,
            kmax,
            n,
            level_tol,
            out,
        } => {
            let bytes = if *map {
                cmd_bose_hubbard_map(*u, *jmax, *kmax, *n, *level_tol)?
            } else {
                cmd_bose_hubbard(*j, *k, *u)?
            };
            (bytes, out)
        }
        Command::Verify {
            state,
            t_max,
            step,
            out,
        } => (cmd_verify(state, *t_max, *step)?, out),
    };
    Ok((bytes, out.clone()))
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let (bytes, out) = render(&cli.command)?;
    match out {
        Some(path) => fs::write(path, bytes)?,
        None => io::stdout().lock().write_all(&bytes)?,
    }
    Ok(())
}

/// Parses `args` and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
