//! `coupled-osc`: branch points, energies, surface meshes, continuation,
//! monodromy, oracle validation and single-oscillator scans from the shell.
//!
//! Exit status: 0 on success, 2 on invalid input (including usage errors),
//! 3 on numerical failure. Errors are written to stderr as one JSON object.

mod commands;
mod config;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coupled_osc::continuation::DEFAULT_SAMPLES_PER_SEGMENT;
use coupled_osc::export::DEFAULT_RESOLUTION;
use coupled_osc::spectral::BranchPointId;
use coupled_osc::SheetLabel;
use serde_json::json;

pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "coupled-osc", version, about = "Eigenvalue surfaces of two coupled harmonic oscillators")]
pub struct Cli {
    /// JSON object of flag values; flags on the command line take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Branch points of the energy surface.
    BranchPoints(BranchPointsArgs),
    /// Energy on one sheet at one coupling.
    Energy(EnergyArgs),
    /// Mesh of every sheet over a window of the coupling (or frequency) plane.
    Surface(SurfaceArgs),
    /// Follow one eigenvalue along a path read from JSON.
    Continue(ContinueArgs),
    /// Sheet permutation for a loop around one branch point.
    Monodromy(MonodromyArgs),
    /// Compare closed forms with truncated-basis diagonalization.
    Oracle(OracleArgs),
    /// Single complex oscillator.
    #[command(subcommand)]
    SingleOsc(SingleOscCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct FrequencyArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub nu: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub omega: f64,
}

#[derive(Debug, Args)]
pub struct LevelArgs {
    /// Total quantum number `n`.
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    /// `m ∈ {n, n−2, …}`.
    #[arg(long, default_value_t = 0)]
    pub m: u32,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Timestamp stored outside the checksummed payload.
    #[arg(long)]
    pub timestamp: Option<String>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct BranchPointsArgs {
    #[command(flatten)]
    pub freqs: FrequencyArgs,
    #[command(flatten)]
    pub level: LevelArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct EnergyArgs {
    #[command(flatten)]
    pub freqs: FrequencyArgs,
    #[command(flatten)]
    pub level: LevelArgs,
    /// Sheet label such as `+++` or `+,-,+` (inner, sA, sB).
    #[arg(long, default_value = "+++", allow_hyphen_values = true)]
    pub sheet: SheetLabel,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub g_re: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub g_im: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Coupled,
    Ho,
    HoMod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComponentArg {
    Re,
    Im,
    Abs,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct SurfaceArgs {
    #[arg(long, value_enum, default_value_t = Model::Coupled)]
    pub model: Model,
    /// Required for the coupled model.
    #[arg(long, allow_negative_numbers = true)]
    pub nu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    #[command(flatten)]
    pub level: LevelArgs,
    /// δ of the modified oscillator.
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    /// `re_min,re_max,im_min,im_max`; defaults to ±1.5 times the outermost branch point.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
    pub window: Option<[f64; 4]>,
    /// `N` or `NXxNY`.
    #[arg(long, value_parser = parse_resolution, default_value_t = Resolution(DEFAULT_RESOLUTION, DEFAULT_RESOLUTION))]
    pub res: Resolution,
    /// `.json` or `.csv`; JSON to stdout when absent.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Also write an SVG heatmap of one sheet.
    #[arg(long, value_name = "FILE")]
    pub svg: Option<PathBuf>,
    /// Sheet index (0-based, in label order) for the SVG.
    #[arg(long, default_value_t = 0)]
    pub svg_sheet: usize,
    #[arg(long, value_enum, default_value_t = ComponentArg::Re)]
    pub svg_component: ComponentArg,
    #[arg(long)]
    pub timestamp: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolution(pub usize, pub usize);

impl std::fmt::Display for Resolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.0, self.1)
    }
}

fn parse_resolution(s: &str) -> Result<Resolution, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad resolution {t:?}: {e}"));
    match s.split_once(['x', 'X']) {
        Some((a, b)) => Ok(Resolution(parse(a)?, parse(b)?)),
        None => {
            let n = parse(s)?;
            Ok(Resolution(n, n))
        }
    }
}

fn parse_window(s: &str) -> Result<[f64; 4], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad window value {t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    parts.try_into().map_err(|_| "window needs four values: re_min,re_max,im_min,im_max".to_string())
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct ContinueArgs {
    #[command(flatten)]
    pub freqs: FrequencyArgs,
    #[command(flatten)]
    pub level: LevelArgs,
    /// Path JSON: `{"segments": [...], "samples_per_segment": k}`.
    #[arg(long, value_name = "FILE")]
    pub path: PathBuf,
    #[arg(long, default_value = "+++", allow_hyphen_values = true)]
    pub start_sheet: SheetLabel,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct MonodromyArgs {
    #[command(flatten)]
    pub freqs: FrequencyArgs,
    #[command(flatten)]
    pub level: LevelArgs,
    /// `real+`, `real-`, `imag+`, `imag-` or `origin`.
    #[arg(long)]
    pub around: BranchPointId,
    #[arg(long)]
    pub radius: f64,
    #[arg(long, default_value_t = DEFAULT_SAMPLES_PER_SEGMENT)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct OracleArgs {
    #[command(flatten)]
    pub freqs: FrequencyArgs,
    /// Comma-separated real couplings.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub g: Vec<f64>,
    #[arg(long, default_value_t = 4)]
    pub nmax: u32,
    #[arg(long, default_value_t = 40)]
    pub basis: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum SingleOscCommand {
    /// Both sheets along the real or imaginary frequency axis.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    Real,
    Imag,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub axis: AxisArg,
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    /// Half-length of the scan; defaults to `max(3δ, 3)`.
    #[arg(long)]
    pub extent: Option<f64>,
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Failure carried to the process boundary.
#[derive(Debug)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
    pub code: u8,
}

impl Failure {
    pub fn validation(message: impl Into<String>) -> Self {
        Failure { kind: "invalid-input", message: message.into(), code: EXIT_VALIDATION }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Failure { kind: "io", message: message.into(), code: EXIT_VALIDATION }
    }
}

impl From<coupled_osc::Error> for Failure {
    fn from(e: coupled_osc::Error) -> Self {
        if e.is_validation() {
            Failure::validation(e.to_string())
        } else {
            Failure { kind: "numerical", message: e.to_string(), code: EXIT_NUMERICAL }
        }
    }
}

fn report(failure: &Failure) -> ExitCode {
    let body = json!({ "error": failure.kind, "message": failure.message, "exit_code": failure.code });
    eprintln!("{body}");
    ExitCode::from(failure.code)
}

fn parse_args() -> Result<Cli, Failure> {
    let mut args: Vec<OsString> = std::env::args_os().collect();
    if let Some(path) = config::take_config_path(&mut args).map_err(Failure::validation)? {
        let text =
            std::fs::read_to_string(&path).map_err(|e| Failure::io(format!("cannot read config {path}: {e}")))?;
        config::merge(&mut args, config::config_flags(&text).map_err(Failure::validation)?);
    }
    Cli::try_parse_from(args).map_err(|e| {
        use clap::error::ErrorKind;
        if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
            let _ = e.print();
            std::process::exit(0);
        }
        Failure { kind: "usage", message: e.render().to_string().trim().to_string(), code: EXIT_VALIDATION }
    })
}

fn main() -> ExitCode {
    let outcome = parse_args().and_then(commands::run);
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => report(&failure),
    }
}
