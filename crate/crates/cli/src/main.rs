//! Command-line front end: dimension tables, JSON scenario analysis, and
//! seeded property sweeps, all with deterministic output.
//!
//! Exit codes follow a scriptable convention: 0 success, 2 a mathematical
//! identity or property check failed, 64 usage errors (including oversized
//! sweep grids), 65 bad input data (named after the module error).

mod scenario;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use prym_hitchin::cover::{CoverData, CoverError};
use prym_hitchin::higgs::HiggsError;
use prym_hitchin::moduli::{
    dim_anti_invariant, dim_invariant_locus, dim_w_space, full_dim_report, identity_sweep,
    p2_orbits_rank2, AntiKind, DimReport, DimRow, DimValue, InvariantType, ModuliError,
    SweepFailure, SweepGrid,
};
use prym_hitchin::samplers;
use prym_hitchin::spectral::{SpectralError, WSpace};

use scenario::{ScenarioFile, Task};

const EXIT_IDENTITY_FAILURE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

/// Failures a subcommand can report, mapped to exit codes in `main`.
/// Data messages start with the module error name, which the library
/// already embeds in its display strings.
pub enum CliError {
    /// Bad flags or an oversized request: exit 64.
    Usage(String),
    /// Invalid mathematical input, named after the module error: exit 65.
    Data(String),
}

impl CliError {
    fn data(name: &str, message: impl fmt::Display) -> Self {
        CliError::Data(format!("{name}: {message}"))
    }
}

impl From<CoverError> for CliError {
    fn from(e: CoverError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<prym_hitchin::algebra::AlgebraError> for CliError {
    fn from(e: prym_hitchin::algebra::AlgebraError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<HiggsError> for CliError {
    fn from(e: HiggsError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<ModuliError> for CliError {
    fn from(e: ModuliError) -> Self {
        match e {
            // An oversized grid is a request problem, not a data problem.
            ModuliError::GridTooLarge { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "prym-hitchin",
    version,
    about = "Dimension tables, local spectral analysis, and property sweeps \
             for invariant and anti-invariant bundles on covers with involution"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print dimension tables for the invariant and anti-invariant loci.
    Dims(DimsArgs),
    /// Run the tasks of a JSON scenario file.
    Analyze(AnalyzeArgs),
    /// Run seeded property sweeps over parameter grids.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    All,
    Wplus,
    Wminus,
    Wmax,
    Wtau,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Md,
    Json,
    Csv,
}

#[derive(Args)]
struct DimsArgs {
    /// Genus of the base curve downstairs.
    #[arg(long = "gy")]
    g_y: u32,
    /// Half the number of ramification points upstairs.
    #[arg(long)]
    n: u32,
    /// Mark the cover as unramified (implied by --n 0).
    #[arg(long)]
    etale: bool,
    /// Rank of the bundles.
    #[arg(long)]
    r: u32,
    /// Section space to report; `all` prints the full table.
    #[arg(long, value_enum, default_value_t = SpaceArg::All)]
    space: SpaceArg,
    /// Type parameter for --space wtau.
    #[arg(long)]
    kp: Option<u32>,
    /// Report one anti-invariant locus instead of a section space.
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    /// Report the invariant locus of this type vector k_1,...,k_2n.
    #[arg(long = "type", value_delimiter = ',', num_args = 1..)]
    type_ks: Option<Vec<u32>>,
    /// Degree of the bundles (used with --type).
    #[arg(long, default_value_t = 0)]
    d: i64,
    /// Fix the determinant (used with --type).
    #[arg(long)]
    fixed_det: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Md)]
    format: FormatArg,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Path to the scenario file.
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Size of the worker pool; results are emitted in input order
    /// regardless.
    #[arg(long)]
    jobs: Option<usize>,
}

/// An inclusive integer range written `a..b`, or a single value `a`.
#[derive(Clone, Copy)]
struct RangeArg(u32, u32);

impl FromStr for RangeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |part: &str| {
            part.parse::<u32>()
                .map_err(|_| format!("expected an integer, got {part:?}"))
        };
        match s.split_once("..") {
            Some((a, b)) => {
                let (lo, hi) = (parse(a)?, parse(b)?);
                if lo > hi {
                    return Err(format!("empty range {s:?}"));
                }
                Ok(RangeArg(lo, hi))
            }
            None => {
                let v = parse(s)?;
                Ok(RangeArg(v, v))
            }
        }
    }
}

impl RangeArg {
    fn pair(self) -> (u32, u32) {
        (self.0, self.1)
    }
}

#[derive(Args)]
struct SweepArgs {
    /// Base genus range for the identity sweep.
    #[arg(long = "gy", default_value = "1..5")]
    g_y: RangeArg,
    /// Ramification half-count range.
    #[arg(long, default_value = "1..6")]
    n: RangeArg,
    /// Rank range for the identity sweep.
    #[arg(long, default_value = "1..8")]
    r: RangeArg,
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Size of the worker pool; never changes output bytes.
    #[arg(long)]
    jobs: Option<usize>,
    /// Run the pfaffian-square suite with this many trials instead of the
    /// identity sweep.
    #[arg(long = "pfaffian-trials")]
    pfaffian_trials: Option<u32>,
    /// Largest matrix dimension for the pfaffian suite.
    #[arg(long = "max-dim", default_value_t = 8)]
    max_dim: u32,
    /// Check the two-torsion orbit table over the --n range instead of the
    /// identity sweep.
    #[arg(long)]
    orbits: bool,
}

/// Dies quietly when the downstream pager closes the pipe instead of
/// panicking mid-report.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Dims(args) => cmd_dims(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(message)) => {
            eprintln!("usage error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Data(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_DATA)
        }
    }
}

fn build_cover(g_y: u32, n: u32, etale_flag: bool) -> Result<CoverData, CliError> {
    let etale = etale_flag || n == 0;
    Ok(CoverData::new(g_y, n, etale)?)
}

fn print_dim_report(report: &DimReport, format: FormatArg) -> Result<(), CliError> {
    match format {
        FormatArg::Md => print!("{}", report.to_markdown()),
        FormatArg::Csv => print!("{}", report.to_csv()),
        FormatArg::Json => println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        ),
    }
    Ok(())
}

fn single_row_report(label: String, value: i64) -> DimReport {
    DimReport {
        rows: vec![DimRow {
            label,
            dim: DimValue::Dim(value),
        }],
        equality_checks: Vec::new(),
    }
}

fn cmd_dims(args: DimsArgs) -> Result<u8, CliError> {
    let cover = build_cover(args.g_y, args.n, args.etale)?;
    if args.kind.is_some() && args.type_ks.is_some() {
        return Err(CliError::Usage(
            "--kind and --type are mutually exclusive".into(),
        ));
    }

    let report = if let Some(kind) = args.kind {
        let kind = match kind {
            KindArg::Plus => AntiKind::Plus,
            KindArg::Minus => AntiKind::Minus,
        };
        let value = dim_anti_invariant(&cover, args.r, kind)?;
        let label = match kind {
            AntiKind::Plus => "U+",
            AntiKind::Minus => "U-",
        };
        single_row_report(label.into(), value)
    } else if let Some(ks) = args.type_ks {
        let t = InvariantType::new(args.r, ks)?;
        let value = dim_invariant_locus(&cover, &t, args.d, args.fixed_det)?;
        let shown: Vec<String> = t.ks().iter().map(u32::to_string).collect();
        single_row_report(format!("U({})", shown.join(",")), value)
    } else {
        match args.space {
            SpaceArg::All => full_dim_report(&cover, args.r)?,
            SpaceArg::Wplus => {
                single_row_report("W+".into(), dim_w_space(&cover, args.r, WSpace::WPlus)?)
            }
            SpaceArg::Wminus => {
                single_row_report("W-".into(), dim_w_space(&cover, args.r, WSpace::WMinus)?)
            }
            SpaceArg::Wmax => {
                single_row_report("Wmax".into(), dim_w_space(&cover, args.r, WSpace::WMax)?)
            }
            SpaceArg::Wtau => {
                let k_p = args.kp.ok_or_else(|| {
                    CliError::Usage("--space wtau needs --kp".into())
                })?;
                single_row_report(
                    format!("Wtau(k_p={k_p})"),
                    dim_w_space(&cover, args.r, WSpace::WTau { k_p })?,
                )
            }
        }
    };
    print_dim_report(&report, args.format)?;
    Ok(if report.all_pass() {
        0
    } else {
        EXIT_IDENTITY_FAILURE
    })
}

fn install_pool(jobs: Option<usize>) -> Result<(), CliError> {
    if let Some(jobs) = jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Usage(format!("worker pool: {e}")))?;
    }
    Ok(())
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<u8, CliError> {
    let text = std::fs::read_to_string(&args.file).map_err(|e| {
        CliError::data("ScenarioUnreadable", format!("{}: {e}", args.file.display()))
    })?;
    let file = scenario::load(&text)?;
    install_pool(args.jobs)?;
    let results = scenario::run_all(&file, args.jobs.unwrap_or(1) > 1)?;
    match args.format {
        FormatArg::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&results).expect("results serialize")
            );
        }
        FormatArg::Md => {
            for (i, (task, result)) in file.tasks.iter().zip(&results).enumerate() {
                println!("## task {i}: {}\n", task.kind_name());
                println!(
                    "```json\n{}\n```\n",
                    serde_json::to_string_pretty(result).expect("results serialize")
                );
            }
        }
        FormatArg::Csv => {
            println!("task,kind,result");
            for (i, (task, result)) in file.tasks.iter().zip(&results).enumerate() {
                let compact = serde_json::to_string(result).expect("results serialize");
                println!("{i},{},\"{}\"", task.kind_name(), compact.replace('"', "\"\""));
            }
        }
    }
    Ok(0)
}

/// A minimal scenario that reproduces one sweep failure.
fn replay_scenario(failure: &SweepFailure) -> ScenarioFile {
    let cover = CoverData::new(failure.g_y, failure.n, failure.n == 0)
        .expect("the sweep only visits admissible covers");
    ScenarioFile {
        version: "1".into(),
        cover,
        tasks: vec![Task::Dims { r: failure.r }],
    }
}

fn max_grid_cells() -> Result<u64, CliError> {
    match std::env::var("PRYM_HITCHIN_MAX_GRID") {
        Ok(raw) => raw.parse::<u64>().map_err(|_| {
            CliError::Usage(format!("PRYM_HITCHIN_MAX_GRID must be an integer, got {raw:?}"))
        }),
        Err(_) => Ok(20_000),
    }
}

fn pfaffian_suite(trials: u32, max_dim: u32, seed: u64) -> Result<bool, CliError> {
    if max_dim < 2 {
        return Err(CliError::Usage("--max-dim must be at least 2".into()));
    }
    let sizes: Vec<usize> = (1..=max_dim as usize).filter(|r| r % 2 == 0).collect();
    let mut rng = samplers::rng(seed);
    for trial in 0..trials {
        let r = sizes[trial as usize % sizes.len()];
        let m = samplers::rand_antisymmetric(&mut rng, r, 2);
        let pf = m.pfaffian()?;
        let det = m.det()?;
        if &pf * &pf != det {
            println!("pfaffian square suite FAILED at trial {trial} (r = {r})");
            let replay = ScenarioFile {
                version: "1".into(),
                cover: CoverData::ramified(1, 1).expect("admissible"),
                tasks: vec![Task::Pfaffian { matrix: m }],
            };
            println!("replay scenario:");
            println!(
                "{}",
                serde_json::to_string_pretty(&replay).expect("scenario serializes")
            );
            return Ok(false);
        }
    }
    println!("pfaffian square suite: {trials} trials pass (dimensions up to {max_dim})");
    Ok(true)
}

fn orbit_suite(range: RangeArg) -> Result<bool, CliError> {
    let (lo, hi) = range.pair();
    if lo < 1 || hi > 8 {
        return Err(CliError::Usage(
            "--orbits supports n between 1 and 8".into(),
        ));
    }
    println!("| n | scalar classes | orbits |");
    println!("|---|---|---|");
    let mut all_two = true;
    for n in lo..=hi {
        let (scalars, orbits) = p2_orbits_rank2(n);
        println!("| {n} | {scalars} | {orbits} |");
        all_two &= scalars == 2;
    }
    if all_two {
        println!("orbit count 2 at every n");
    } else {
        println!("orbit table FAILED: a scalar class count differs from 2");
    }
    Ok(all_two)
}

fn cmd_sweep(args: SweepArgs) -> Result<u8, CliError> {
    println!("seed: {}", args.seed);
    install_pool(args.jobs)?;
    let mut all_pass = true;
    let specialized = args.pfaffian_trials.is_some() || args.orbits;
    if let Some(trials) = args.pfaffian_trials {
        all_pass &= pfaffian_suite(trials, args.max_dim, args.seed)?;
    }
    if args.orbits {
        all_pass &= orbit_suite(args.n)?;
    }
    if !specialized {
        let grid = SweepGrid {
            g_y: args.g_y.pair(),
            n: args.n.pair(),
            r: args.r.pair(),
        };
        let report = identity_sweep(&grid, max_grid_cells()?)?;
        print!("{}", report.to_markdown());
        if !report.passed() {
            all_pass = false;
            if let Some(first) = report.failures.first() {
                println!("replay scenario:");
                println!(
                    "{}",
                    serde_json::to_string_pretty(&replay_scenario(first))
                        .expect("scenario serializes")
                );
            }
        }
    }
    Ok(if all_pass { 0 } else { EXIT_IDENTITY_FAILURE })
}
