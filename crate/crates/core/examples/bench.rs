//! Small benchmark matrix: generates random instances into a temporary
//! directory and prints the CSV the `bench` subcommand would write.
//!
//!     cargo run --release --example bench -- [count] [n]

use kratio::cli::{bench, generate, write_bench_csv, Algorithm, BenchConfig, Problem};
use kratio::oracle::OracleLimits;
use kratio::Fraction;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(6);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(10);
    let dir = std::env::temp_dir().join(format!("kratio-bench-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    for i in 0..count {
        let values = generate(n, 1, 1000, i as u64)?;
        std::fs::write(dir.join(format!("inst_{i:03}.txt")), kratio::cli::format_instance(&values))?;
    }
    let config = BenchConfig {
        dir: dir.clone(),
        problem: Problem::Ssr,
        k: 2,
        epsilons: vec![Fraction::epsilon(1, 10)?, Fraction::epsilon(1, 2)?],
        algorithms: vec![Algorithm::DpFptas, Algorithm::FastFptas],
        threads: Some(1),
        oracle_limits: OracleLimits::default(),
    };
    let rows = bench(&config)?;
    write_bench_csv(&rows, std::io::stdout())?;
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
