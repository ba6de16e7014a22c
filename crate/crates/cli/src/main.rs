//! `icotherm`: temperature sweeps, Otto-cycle reports, anomaly thresholds
//! and verification suites for the quantum-switch thermodynamics library.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

mod format;
mod svg;
mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use format::fmt_sig;
use ico_thermo::otto::{self, OttoConfig};
use ico_thermo::thermo::{self, SweepMode};

#[derive(Parser)]
#[command(
    name = "icotherm",
    version,
    about = "Heat flow under a quantum switch of thermalization channels: sweeps, Otto cycle, thresholds, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the channel temperature and tabulate conditional heat flows
    Sweep(SweepArgs),
    /// Sweep the Otto-cycle frequency ratio and tabulate the energy ledger
    Otto(OttoArgs),
    /// Print the conditional heating/cooling temperature bounds
    Thresholds(ThresholdsArgs),
    /// Run randomized equivalence and consistency suites
    Verify(VerifyArgs),
    /// Check the wave-plate decompositions and the 16-run reconstruction
    PhotonicCheck(PhotonicCheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Ico,
    Classical,
    Coherent,
}

impl Mode {
    fn to_sweep(self) -> SweepMode {
        match self {
            Mode::Ico => SweepMode::Ico,
            Mode::Classical => SweepMode::Classical,
            Mode::Coherent => SweepMode::Coherent,
        }
    }

    fn parse(name: &str) -> Result<Self, AppError> {
        match name {
            "ico" => Ok(Mode::Ico),
            "classical" => Ok(Mode::Classical),
            "coherent" => Ok(Mode::Coherent),
            other => Err(AppError::usage(format!("unknown mode '{other}'"))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Mode::Ico => "ico",
            Mode::Classical => "classical",
            Mode::Coherent => "coherent",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Svg,
}

impl OutputFormat {
    fn parse(name: &str) -> Result<Self, AppError> {
        match name {
            "csv" => Ok(OutputFormat::Csv),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(AppError::usage(format!("unknown format '{other}'"))),
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    /// Process driving the sweep
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// System temperature T_S
    #[arg(long = "t-s")]
    t_s: Option<f64>,
    /// System transition frequency ω
    #[arg(long)]
    omega: Option<f64>,
    /// Control weight α of |0⟩_c
    #[arg(long)]
    alpha: Option<f64>,
    /// Lowest channel temperature (defaults to 0.25·T_S)
    #[arg(long = "te-min")]
    te_min: Option<f64>,
    /// Highest channel temperature (defaults to 2·T_S)
    #[arg(long = "te-max")]
    te_max: Option<f64>,
    /// Number of grid points
    #[arg(long)]
    steps: Option<usize>,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct OttoArgs {
    /// Base frequency ω1
    #[arg(long)]
    omega1: Option<f64>,
    /// Cold-contact temperature T2
    #[arg(long)]
    t2: Option<f64>,
    /// Reset-contact temperature T4
    #[arg(long)]
    t4: Option<f64>,
    /// Control weight α
    #[arg(long)]
    alpha: Option<f64>,
    /// Memory-erasure reservoir temperature (defaults to T4)
    #[arg(long = "t-r")]
    t_r: Option<f64>,
    /// Lowest frequency ratio ω2/ω1
    #[arg(long = "ratio-min")]
    ratio_min: Option<f64>,
    /// Highest frequency ratio ω2/ω1
    #[arg(long = "ratio-max")]
    ratio_max: Option<f64>,
    /// Number of grid points
    #[arg(long)]
    steps: Option<usize>,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct ThresholdsArgs {
    /// System transition frequency ω
    #[arg(long)]
    omega: Option<f64>,
    /// System temperature T_S
    #[arg(long = "t-s")]
    t_s: Option<f64>,
    /// JSON config file; flags override its keys
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Trials per randomized suite
    #[arg(long)]
    trials: Option<usize>,
    /// RNG seed
    #[arg(long)]
    seed: Option<u64>,
    /// Max deviation accepted per suite
    #[arg(long)]
    tol: Option<f64>,
    /// JSON config file; flags override its keys
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct PhotonicCheckArgs {
    /// Random angles per check
    #[arg(long)]
    trials: Option<usize>,
    /// RNG seed
    #[arg(long)]
    seed: Option<u64>,
    /// Max deviation accepted per check
    #[arg(long)]
    tol: Option<f64>,
    /// JSON config file; flags override its keys
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct IoArgs {
    /// Write to this file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// JSON config file; flags override its keys
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(default)]
struct SweepConfigFile {
    mode: Option<String>,
    t_s: Option<f64>,
    omega: Option<f64>,
    alpha: Option<f64>,
    te_min: Option<f64>,
    te_max: Option<f64>,
    steps: Option<usize>,
    output: Option<PathBuf>,
    format: Option<String>,
}

#[derive(Deserialize, Default)]
#[serde(default)]
struct OttoConfigFile {
    omega1: Option<f64>,
    t2: Option<f64>,
    t4: Option<f64>,
    alpha: Option<f64>,
    t_r: Option<f64>,
    ratio_min: Option<f64>,
    ratio_max: Option<f64>,
    steps: Option<usize>,
    output: Option<PathBuf>,
    format: Option<String>,
}

#[derive(Deserialize, Default)]
#[serde(default)]
struct ThresholdsConfigFile {
    omega: Option<f64>,
    t_s: Option<f64>,
}

#[derive(Deserialize, Default)]
#[serde(default)]
struct SuiteConfigFile {
    trials: Option<usize>,
    seed: Option<u64>,
    tol: Option<f64>,
}

struct AppError {
    message: String,
    code: u8,
}

impl AppError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: 2,
        }
    }
}

impl From<ico_thermo::Error> for AppError {
    fn from(e: ico_thermo::Error) -> Self {
        AppError::usage(e.to_string())
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::usage(e.to_string())
    }
}

fn load_config<T: serde::de::DeserializeOwned + Default>(
    path: &Option<PathBuf>,
) -> Result<T, AppError> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| AppError::usage(format!("cannot read config {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| AppError::usage(format!("bad config {}: {e}", p.display())))
        }
    }
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), AppError> {
    match output {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn run_sweep(args: SweepArgs) -> Result<(), AppError> {
    let cfg: SweepConfigFile = load_config(&args.io.config)?;
    let mode = match (args.mode, cfg.mode) {
        (Some(m), _) => m,
        (None, Some(name)) => Mode::parse(&name)?,
        (None, None) => Mode::Ico,
    };
    let t_s = args.t_s.or(cfg.t_s).unwrap_or(1.0);
    let omega = args.omega.or(cfg.omega).unwrap_or(1.0);
    let alpha = args.alpha.or(cfg.alpha).unwrap_or(0.5);
    let te_min = args.te_min.or(cfg.te_min).unwrap_or(0.25 * t_s);
    let te_max = args.te_max.or(cfg.te_max).unwrap_or(2.0 * t_s);
    let steps = args.steps.or(cfg.steps).unwrap_or(200);
    let format = match (args.io.format, cfg.format) {
        (Some(f), _) => f,
        (None, Some(name)) => OutputFormat::parse(&name)?,
        (None, None) => OutputFormat::Csv,
    };
    let output = args.io.output.or(cfg.output);

    let grid = thermo::uniform_grid(te_min, te_max, steps);
    let records = thermo::sweep_heat(t_s, omega, alpha, &grid, mode.to_sweep())?;

    let content = match format {
        OutputFormat::Csv => {
            let mut out = String::new();
            writeln!(
                out,
                "# sweep mode={} t_s={t_s} omega={omega} alpha={alpha} steps={steps}",
                mode.name()
            )
            .unwrap();
            writeln!(
                out,
                "te_over_ts,p_plus,p_minus,dq_plus,dq_minus,f_plus,f_minus"
            )
            .unwrap();
            for r in &records {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    fmt_sig(r.te_over_ts),
                    fmt_sig(r.p_plus),
                    fmt_sig(r.p_minus),
                    fmt_sig(r.dq_plus),
                    fmt_sig(r.dq_minus),
                    fmt_sig(r.f_plus),
                    fmt_sig(r.f_minus)
                )
                .unwrap();
            }
            out
        }
        OutputFormat::Svg => {
            let series = [
                svg::Series {
                    name: "dq_plus",
                    points: records.iter().map(|r| (r.te_over_ts, r.dq_plus)).collect(),
                },
                svg::Series {
                    name: "dq_minus",
                    points: records.iter().map(|r| (r.te_over_ts, r.dq_minus)).collect(),
                },
            ];
            svg::render(
                &format!("conditional heat, mode={}", mode.name()),
                "T_E / T_S",
                "heat",
                &series,
            )
        }
    };
    emit(&output, &content)
}

fn run_otto(args: OttoArgs) -> Result<(), AppError> {
    let cfg: OttoConfigFile = load_config(&args.io.config)?;
    let omega1 = args.omega1.or(cfg.omega1).unwrap_or(1.0);
    let t2 = args.t2.or(cfg.t2).unwrap_or(0.9);
    let t4 = args.t4.or(cfg.t4).unwrap_or(1.0);
    let alpha = args.alpha.or(cfg.alpha).unwrap_or(0.5);
    let t_r = args.t_r.or(cfg.t_r).unwrap_or(t4);
    let ratio_min = args.ratio_min.or(cfg.ratio_min).unwrap_or(1.0);
    let ratio_max = args.ratio_max.or(cfg.ratio_max).unwrap_or(1.5);
    let steps = args.steps.or(cfg.steps).unwrap_or(500);
    let format = match (args.io.format, cfg.format) {
        (Some(f), _) => f,
        (None, Some(name)) => OutputFormat::parse(&name)?,
        (None, None) => OutputFormat::Csv,
    };
    let output = args.io.output.or(cfg.output);

    let base = OttoConfig::new(omega1, omega1 * ratio_max.max(1.0), t2, t4, t_r, alpha)?;
    let grid = thermo::uniform_grid(ratio_min, ratio_max, steps);
    let reports = otto::sweep_ratio(&base, &grid)?;

    let argmax = grid
        .iter()
        .zip(&reports)
        .filter_map(|(&ratio, r)| r.as_ref().ok().map(|rep| (ratio, rep.cop)))
        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap());

    let content = match format {
        OutputFormat::Csv => {
            let mut out = String::new();
            writeln!(
                out,
                "# otto omega1={omega1} t2={t2} t4={t4} t_r={t_r} alpha={alpha} steps={steps}"
            )
            .unwrap();
            writeln!(out, "ratio,w_net,q2,q4,p_minus,w_era,cop").unwrap();
            for (&ratio, rep) in grid.iter().zip(&reports) {
                match rep {
                    Ok(r) => writeln!(
                        out,
                        "{},{},{},{},{},{},{}",
                        fmt_sig(ratio),
                        fmt_sig(r.w_net),
                        fmt_sig(r.q2),
                        fmt_sig(r.q4),
                        fmt_sig(r.p_minus),
                        fmt_sig(r.w_era),
                        fmt_sig(r.cop)
                    )
                    .unwrap(),
                    Err(e) => {
                        writeln!(out, "# ratio={} cycle impossible: {e}", fmt_sig(ratio)).unwrap();
                        writeln!(out, "{},nan,nan,nan,nan,nan,nan", fmt_sig(ratio)).unwrap();
                    }
                }
            }
            match argmax {
                Some((ratio, cop)) => writeln!(
                    out,
                    "# argmax_cop ratio={} cop={}",
                    fmt_sig(ratio),
                    fmt_sig(cop)
                )
                .unwrap(),
                None => writeln!(out, "# argmax_cop undefined").unwrap(),
            }
            out
        }
        OutputFormat::Svg => {
            let pick = |f: fn(&otto::OttoReport) -> f64| -> Vec<(f64, f64)> {
                grid.iter()
                    .zip(&reports)
                    .filter_map(|(&ratio, r)| r.as_ref().ok().map(|rep| (ratio, f(rep))))
                    .collect()
            };
            let series = [
                svg::Series {
                    name: "w_net",
                    points: pick(|r| r.w_net),
                },
                svg::Series {
                    name: "q2",
                    points: pick(|r| r.q2),
                },
                svg::Series {
                    name: "q4",
                    points: pick(|r| r.q4),
                },
                svg::Series {
                    name: "cop",
                    points: pick(|r| r.cop),
                },
            ];
            svg::render(
                "Otto cycle vs frequency ratio",
                "omega2 / omega1",
                "energy",
                &series,
            )
        }
    };
    emit(&output, &content)
}

fn run_thresholds(args: ThresholdsArgs) -> Result<(), AppError> {
    let cfg: ThresholdsConfigFile = load_config(&args.config)?;
    let omega = args.omega.or(cfg.omega).unwrap_or(1.0);
    let t_s = args.t_s.or(cfg.t_s).unwrap_or(1.0);
    let heating = thermo::heating_threshold(omega, t_s)?;
    let cooling = thermo::cooling_threshold(omega, t_s)?;
    println!("heating_min_te {heating:.6}");
    println!("cooling_max_te {cooling:.6}");
    Ok(())
}

fn print_suites(
    header: &str,
    label: &str,
    suites: &[verify::SuiteResult],
    tol: f64,
) -> Result<(), AppError> {
    println!("{header}");
    let mut all_pass = true;
    for s in suites {
        let pass = s.max_deviation <= tol;
        all_pass &= pass;
        println!(
            "suite {}: max_deviation {:.3e} {}",
            s.name,
            s.max_deviation,
            if pass { "pass" } else { "fail" }
        );
    }
    if all_pass {
        println!("{label}: PASS");
        Ok(())
    } else {
        println!("{label}: FAIL");
        Err(AppError {
            message: String::new(),
            code: 1,
        })
    }
}

fn run_verify(args: VerifyArgs) -> Result<(), AppError> {
    let cfg: SuiteConfigFile = load_config(&args.config)?;
    let trials = args.trials.or(cfg.trials).unwrap_or(1000);
    let seed = args.seed.or(cfg.seed).unwrap_or(42);
    let tol = args.tol.or(cfg.tol).unwrap_or(1e-12);
    let suites = verify::run_verify(trials, seed);
    print_suites(
        &format!("# verify trials={trials} seed={seed} tol={tol:e}"),
        "verify",
        &suites,
        tol,
    )
}

fn run_photonic_check(args: PhotonicCheckArgs) -> Result<(), AppError> {
    let cfg: SuiteConfigFile = load_config(&args.config)?;
    let trials = args.trials.or(cfg.trials).unwrap_or(100);
    let seed = args.seed.or(cfg.seed).unwrap_or(7);
    let tol = args.tol.or(cfg.tol).unwrap_or(1e-12);
    let suites = verify::run_photonic_check(trials, seed);
    print_suites(
        &format!("# photonic-check trials={trials} seed={seed} tol={tol:e}"),
        "photonic-check",
        &suites,
        tol,
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(args) => run_sweep(args),
        Command::Otto(args) => run_otto(args),
        Command::Thresholds(args) => run_thresholds(args),
        Command::Verify(args) => run_verify(args),
        Command::PhotonicCheck(args) => run_photonic_check(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.message.is_empty() {
                eprintln!("error: {}", e.message);
            }
            ExitCode::from(e.code)
        }
    }
}
