use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use kratio::cli::{self, Algorithm, BenchConfig, CliError, Format, Problem, RunConfig};
use kratio::oracle::OracleLimits;

#[derive(Parser)]
#[command(name = "kratio", version, about = "Min-ratio k-subset sum and k-way partition solvers")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance file and print a report.
    Solve {
        #[arg(long, default_value = "ssr")]
        problem: Problem,
        #[arg(long)]
        algorithm: Algorithm,
        #[arg(long)]
        k: usize,
        /// `a/b` or a decimal in (0, 1).
        #[arg(long, value_parser = cli::parse_epsilon)]
        epsilon: Option<kratio::Fraction>,
        /// Anchor index (1-based, in sorted order) for exact-restricted.
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "json")]
        format: Format,
        /// Solve independent anchors/windows on all cores.
        #[arg(long)]
        parallel: bool,
        /// Stop as soon as a ratio of exactly 1 is found.
        #[arg(long)]
        stop_at_one: bool,
        /// Write `elapsed_ms` as null so output is reproducible byte for byte.
        #[arg(long)]
        no_timing: bool,
        /// Give up after this many seconds.
        #[arg(long)]
        time_limit: Option<f64>,
    },
    /// Run an algorithm x epsilon matrix over every file in a directory.
    Bench {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long, default_value = "ssr")]
        problem: Problem,
        #[arg(long)]
        k: usize,
        /// Comma-separated, e.g. `0.1,1/2`.
        #[arg(long, value_delimiter = ',', value_parser = cli::parse_epsilon)]
        epsilons: Vec<kratio::Fraction>,
        /// Comma-separated, e.g. `dp-fptas,fast-fptas`.
        #[arg(long, value_delimiter = ',')]
        algorithms: Vec<Algorithm>,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads for rows (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Write uniformly random instances.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        min: u64,
        #[arg(long)]
        max: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of files to write into `--out`; seeds are `seed, seed+1, ...`.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Output directory; without it one instance goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Solve { problem, algorithm, k, epsilon, p, input, format, parallel, stop_at_one, no_timing, time_limit } => {
            let time_limit = time_limit
                .map(|s| Duration::try_from_secs_f64(s).map_err(|e| CliError::Usage(format!("--time-limit: {e}"))))
                .transpose()?;
            let config = RunConfig {
                problem,
                algorithm,
                k,
                epsilon,
                p,
                input,
                format,
                parallel,
                stop_at_one,
                timing: !no_timing,
                time_limit,
            };
            print!("{}", cli::run(&config)?);
        }
        Command::Bench { dir, problem, k, epsilons, algorithms, out, threads } => {
            let config = BenchConfig { dir, problem, k, epsilons, algorithms, threads, oracle_limits: OracleLimits::default() };
            let rows = cli::bench(&config)?;
            let file = fs::File::create(&out).map_err(|e| CliError::Io(out.display().to_string(), e))?;
            cli::write_bench_csv(&rows, file)?;
        }
        Command::Gen { n, min, max, seed, count, out } => match out {
            None => print!("{}", cli::format_instance(&cli::generate(n, min, max, seed)?)),
            Some(dir) => {
                let io = |e| CliError::Io(dir.display().to_string(), e);
                fs::create_dir_all(&dir).map_err(io)?;
                for i in 0..count {
                    let values = cli::generate(n, min, max, seed + i as u64)?;
                    let path = dir.join(format!("inst_{i:04}.txt"));
                    fs::write(&path, cli::format_instance(&values)).map_err(io)?;
                }
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(args.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
