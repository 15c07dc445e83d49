use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use free_euler::cli;
use free_euler::{Error, GaussRational, Mode};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

/// Free Euler equations on a semicircular system.
#[derive(Parser, Debug)]
#[command(name = "free-euler", version)]
struct Args {
    /// Simulation config (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Scalar mode; `simulate` defaults to the config, others to exact.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    /// Output directory for `simulate`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Only errors on stderr; results still go to stdout.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run a truncated free Euler simulation from --config.
    Simulate,
    /// Run an invariant suite: algebra, trace, trace-oracle, leray,
    /// exact-sequence, lemma1, energy, vorticity-transport or all.
    Check {
        suite: String,
        /// Random cases per suite.
        #[arg(long, default_value_t = 20)]
        cases: usize,
    },
    /// Print τ(P).
    Trace {
        expr: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Print the Leray projection of a field "(p1, ..., pn)" and the pressure.
    Project {
        field: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Print ∂_j P, δ_j P and, with --direction, D_b P.
    Derive {
        expr: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        direction: Option<String>,
    },
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = if args.quiet { "error" } else { "info" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(&args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(args: &Args) -> Result<u8, Error> {
    let mode = args.mode.map(Mode::from);
    let exact = mode.unwrap_or(Mode::Exact) == Mode::Exact;
    match &args.cmd {
        Cmd::Simulate => {
            let config = args
                .config
                .as_deref()
                .ok_or_else(|| Error::InvalidConfig("simulate needs --config PATH".into()))?;
            let (run, files) = cli::cmd_simulate(config, mode, args.out.as_deref())?;
            if !args.quiet {
                log::info!(
                    "{} samples written to {} and {}",
                    run.manifest.records.len(),
                    files.csv.display(),
                    files.manifest.display()
                );
                if let Some(d) = cli::energy_drift(&run.manifest.records) {
                    log::info!("relative energy drift {d:.3e}");
                }
            }
            Ok(0)
        }
        Cmd::Check { suite, cases } => {
            let reports = cli::cmd_check(suite, args.seed, *cases)?;
            let mut failed = false;
            for r in &reports {
                let status = if r.passed() { "pass" } else { "FAIL" };
                println!("{status} {} ({} checks, seed {})", r.suite, r.checks, r.seed);
                for f in &r.failures {
                    println!("  {f}");
                }
                failed |= !r.passed();
            }
            Ok(if failed { 2 } else { 0 })
        }
        Cmd::Trace { expr, n } => {
            let out = if exact {
                cli::cmd_trace::<GaussRational>(expr, *n)?
            } else {
                cli::cmd_trace::<Complex64>(expr, *n)?
            };
            println!("{out}");
            Ok(0)
        }
        Cmd::Project { field, n } => {
            let (f, p) = if exact {
                cli::cmd_project::<GaussRational>(field, *n)?
            } else {
                cli::cmd_project::<Complex64>(field, *n)?
            };
            println!("field: {f}");
            println!("pressure: {p}");
            Ok(0)
        }
        Cmd::Derive { expr, n, direction } => {
            let out = if exact {
                cli::cmd_derive::<GaussRational>(expr, *n, direction.as_deref())?
            } else {
                cli::cmd_derive::<Complex64>(expr, *n, direction.as_deref())?
            };
            print!("{out}");
            Ok(0)
        }
    }
}
