use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use spgomp::analysis::{flop_model, rip_conditions, rip_constant_bruteforce};
use spgomp::bench::{run_sweep, write_csv, write_json, Algorithm, BenchConfig, OutputFormat, SignalKind};
use spgomp::linalg::{read_matrix_csv, read_vector_csv, DenseMatrix, DenseVector};
use spgomp::recovery::{cosamp_recover, gomp_recover, Epsilon, RecoveryConfig, RecoveryResult, StopReason};
use spgomp::Error;

/// Sparse recovery with generalized orthogonal matching pursuit.
#[derive(Parser)]
#[command(name = "spgomp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recover one sparse vector from a sensing matrix and measurements.
    Recover(RecoverArgs),
    /// Monte Carlo recovery-frequency sweep over sparsity.
    Bench(BenchArgs),
    /// Brute-force restricted isometry constant of one order.
    Rip(RipArgs),
    /// Sufficient isometry thresholds for a given N and K.
    Bound(BoundArgs),
    /// Modeled floating-point operation counts for gOMP.
    Flops(FlopsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgArg {
    Gomp,
    Omp,
    Cosamp,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignalArg {
    Gaussian,
    Pam,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct RecoverArgs {
    /// Sensing matrix, one CSV row per measurement.
    #[arg(long)]
    phi: PathBuf,
    /// Measurement vector as a single CSV row or column.
    #[arg(long)]
    y: PathBuf,
    #[arg(long, value_enum, default_value = "gomp")]
    alg: AlgArg,
    /// Indices selected per iteration (gomp only).
    #[arg(long = "N", default_value_t = 1)]
    big_n: usize,
    /// Sparsity level.
    #[arg(long = "K")]
    k: usize,
    /// Absolute residual-norm threshold; defaults to 1e-6 * ||y||.
    #[arg(long)]
    eps: Option<f64>,
    /// Write the full result, including per-iteration traces, as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 128)]
    m: usize,
    #[arg(long, default_value_t = 256)]
    n: usize,
    #[arg(long = "N", default_value_t = 5)]
    big_n: usize,
    #[arg(long, default_value_t = 10)]
    kmin: usize,
    #[arg(long, default_value_t = 45)]
    kmax: usize,
    #[arg(long, default_value_t = 5)]
    kstep: usize,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, value_enum, default_value = "gaussian")]
    signal: SignalArg,
    /// Comma-separated subset of gomp, omp, cosamp.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "gomp,omp,cosamp")]
    algs: Vec<AlgArg>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RipArgs {
    #[arg(long)]
    phi: PathBuf,
    #[arg(long = "K")]
    k: usize,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long = "N")]
    big_n: usize,
    #[arg(long = "K")]
    k: usize,
}

#[derive(Args)]
struct FlopsArgs {
    #[arg(long = "N")]
    big_n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    /// Number of iterations.
    #[arg(long = "S")]
    s: usize,
}

impl From<AlgArg> for Algorithm {
    fn from(a: AlgArg) -> Self {
        match a {
            AlgArg::Gomp => Algorithm::Gomp,
            AlgArg::Omp => Algorithm::Omp,
            AlgArg::Cosamp => Algorithm::Cosamp,
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidArgument(_) | Error::Io(_) => 2,
        Error::EnumerationTooLarge { .. } => 4,
        Error::DimensionMismatch(_)
        | Error::NonFinite(_)
        | Error::RankDeficient { .. }
        | Error::Parse(_)
        | Error::Csv(_)
        | Error::Json(_) => 3,
    }
}

fn open(path: &Path) -> spgomp::Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn print_json<T: Serialize>(value: &T) -> spgomp::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct RecoverySummary<'a> {
    support: Vec<usize>,
    x_hat: &'a DenseVector,
    iterations: usize,
    converged: bool,
    stop_reason: StopReason,
    modeled_flops: u64,
}

fn recover(args: &RecoverArgs) -> spgomp::Result<()> {
    let phi: DenseMatrix = read_matrix_csv(open(&args.phi)?)?;
    let y = read_vector_csv(open(&args.y)?)?;
    if y.len() != phi.rows() {
        return Err(Error::DimensionMismatch(format!(
            "y has {} entries but phi has {} rows",
            y.len(),
            phi.rows()
        )));
    }
    let epsilon = match args.eps {
        Some(e) if e.is_finite() && e >= 0.0 => Epsilon::Absolute(e),
        Some(e) => return Err(Error::InvalidArgument(format!("eps must be finite and >= 0, got {e}"))),
        None => Epsilon::default(),
    };
    let result: RecoveryResult = match args.alg {
        AlgArg::Gomp => {
            let cfg = RecoveryConfig::new(args.big_n, args.k)?.with_epsilon(epsilon);
            gomp_recover(&phi, &y, &cfg)?
        }
        AlgArg::Omp => gomp_recover(&phi, &y, &RecoveryConfig::new(1, args.k)?.with_epsilon(epsilon))?,
        AlgArg::Cosamp => cosamp_recover(&phi, &y, args.k, args.k, epsilon)?,
    };
    if let Some(path) = &args.out {
        let file = File::create(path)?;
        serde_json::to_writer_pretty(&file, &result)?;
    }
    print_json(&RecoverySummary {
        support: result.sorted_support(),
        x_hat: &result.x_hat,
        iterations: result.iterations(),
        converged: result.converged,
        stop_reason: result.stop_reason,
        modeled_flops: result.modeled_flops,
    })
}

fn bench(args: &BenchArgs) -> spgomp::Result<()> {
    if args.kstep == 0 || args.kmin > args.kmax {
        return Err(Error::InvalidArgument("need kstep >= 1 and kmin <= kmax".into()));
    }
    let cfg = BenchConfig {
        m: args.m,
        n: args.n,
        k_values: (args.kmin..=args.kmax).step_by(args.kstep).collect(),
        big_n: args.big_n,
        trials: args.trials,
        signal_kind: match args.signal {
            SignalArg::Gaussian => SignalKind::Gaussian,
            SignalArg::Pam => SignalKind::Pam,
        },
        algorithms: args.algs.iter().map(|&a| a.into()).collect(),
        master_seed: args.seed,
        ..BenchConfig::default()
    };
    let rows = run_sweep(&cfg)?;
    let format = match args.format {
        FormatArg::Csv => OutputFormat::Csv,
        FormatArg::Json => OutputFormat::Json,
    };
    match &args.out {
        Some(path) => spgomp::bench::emit(&rows, format, path),
        None => {
            let out = io::stdout().lock();
            match format {
                OutputFormat::Csv => write_csv(out, &rows),
                OutputFormat::Json => write_json(out, &rows),
            }
        }
    }
}

fn run(cli: Cli) -> spgomp::Result<()> {
    match cli.command {
        Command::Recover(args) => recover(&args),
        Command::Bench(args) => bench(&args),
        Command::Rip(args) => {
            let phi = read_matrix_csv(open(&args.phi)?)?;
            print_json(&rip_constant_bruteforce(&phi, args.k)?)
        }
        Command::Bound(args) => {
            if args.big_n == 0 || args.k == 0 {
                return Err(Error::InvalidArgument("N and K must be at least 1".into()));
            }
            print_json(&rip_conditions(args.big_n, args.k))
        }
        Command::Flops(args) => {
            if args.big_n == 0 || args.m == 0 || args.n == 0 {
                return Err(Error::InvalidArgument("N, m and n must be at least 1".into()));
            }
            print_json(&flop_model(args.big_n, args.m, args.n, args.s))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("spgomp: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
