//! Instance files, algorithm dispatch, reports and the benchmark harness
//! behind the `kratio` binary.
//!
//! Instance files hold whitespace-separated positive integers; lines whose
//! first non-blank character is `#` are comments. `k` always comes from the
//! command line.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::dp::DpStats;
use crate::error::Error;
use crate::fast_fptas::fast_fptas_kssr_with;
use crate::feasibility::{check_feasible, ProblemKind};
use crate::instance::{Instance, Solution};
use crate::options::SolveOptions;
use crate::oracle::{brute_force_kpart, brute_force_kssr, OracleLimits};
use crate::part_fptas::fptas_kpart_with;
use crate::ratio::{ExtendedRational, Fraction};
use crate::ssr_exact::exact_kssrr_with;
use crate::ssr_fptas::fptas_kssr_with;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: line {line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error(transparent)]
    Solver(#[from] Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 when the request has no feasible answer, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Solver(Error::Infeasible | Error::SubsetCountExceedsValues { .. }) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    Ssr,
    Part,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    DpFptas,
    FastFptas,
    ExactRestricted,
    BruteForce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    CsvRow,
}

macro_rules! keyword_enum {
    ($ty:ty, $what:literal, $($name:literal => $variant:expr),+ $(,)?) => {
        impl FromStr for $ty {
            type Err = CliError;
            fn from_str(s: &str) -> Result<Self, CliError> {
                match s {
                    $($name => Ok($variant),)+
                    _ => Err(CliError::Usage(format!(concat!("unknown ", $what, " '{}'"), s))),
                }
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let name = match self {
                    $(v if *v == $variant => $name,)+
                    _ => unreachable!(),
                };
                f.write_str(name)
            }
        }
    };
}

keyword_enum!(Problem, "problem", "ssr" => Problem::Ssr, "part" => Problem::Part);
keyword_enum!(Algorithm, "algorithm",
    "dp-fptas" => Algorithm::DpFptas,
    "fast-fptas" => Algorithm::FastFptas,
    "exact-restricted" => Algorithm::ExactRestricted,
    "brute-force" => Algorithm::BruteForce,
);
keyword_enum!(Format, "format", "json" => Format::Json, "csv-row" => Format::CsvRow);

impl Algorithm {
    pub fn is_fptas(self) -> bool {
        matches!(self, Algorithm::DpFptas | Algorithm::FastFptas)
    }
}

/// Parses an epsilon given as `a/b` or a decimal and requires `0 < ε < 1`.
pub fn parse_epsilon(s: &str) -> Result<Fraction, CliError> {
    let f: Fraction = s.parse().map_err(|e: Error| CliError::Usage(format!("epsilon: {e}")))?;
    if !f.is_proper() {
        return Err(CliError::Usage(format!("epsilon {f} is not in (0, 1)")));
    }
    Ok(f)
}

/// One `solve` request.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub problem: Problem,
    pub algorithm: Algorithm,
    pub k: usize,
    pub epsilon: Option<Fraction>,
    pub p: Option<usize>,
    pub input: PathBuf,
    pub format: Format,
    pub parallel: bool,
    pub stop_at_one: bool,
    /// Report `elapsed_ms`; when off it is written as `null` so that output is
    /// byte-identical across runs.
    pub timing: bool,
    /// Abort with an error once this much wall-clock time has passed.
    pub time_limit: Option<Duration>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let usage = |m: &str| Err(CliError::Usage(m.to_string()));
        match (self.algorithm.is_fptas(), self.epsilon) {
            (true, None) => return usage("--epsilon is required for FPTAS algorithms"),
            (false, Some(_)) => return usage("--epsilon is only accepted by FPTAS algorithms"),
            _ => {}
        }
        match (self.algorithm == Algorithm::ExactRestricted, self.p) {
            (true, None) => return usage("--p is required for exact-restricted"),
            (false, Some(_)) => return usage("--p is only accepted by exact-restricted"),
            _ => {}
        }
        if self.problem == Problem::Part && matches!(self.algorithm, Algorithm::FastFptas | Algorithm::ExactRestricted) {
            return Err(CliError::Usage(format!("{} solves ssr only", self.algorithm)));
        }
        if self.k < 2 {
            return usage("--k must be at least 2");
        }
        Ok(())
    }
}

/// Reads an instance file; errors carry the 1-based line number.
pub fn parse_instance_file(path: &Path, k: usize) -> Result<Instance, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    parse_instance_str(&text, k, &path.display().to_string())
}

pub fn parse_instance_str(text: &str, k: usize, origin: &str) -> Result<Instance, CliError> {
    let mut values = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        for token in line.split_whitespace() {
            let err = |message: String| CliError::Parse { path: origin.to_string(), line: idx + 1, message };
            if !token.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err(format!("'{token}' is not a positive integer")));
            }
            let v: u64 = token.parse().map_err(|_| err(format!("'{token}' does not fit in 64 bits")))?;
            if v == 0 {
                return Err(err("values must be positive".to_string()));
            }
            values.push(v);
        }
    }
    Ok(Instance::from_unsorted(values, k)?)
}

/// Solution together with the DP state count observed while computing it.
#[derive(Clone, Debug)]
pub struct Solved {
    pub solution: Solution,
    pub peak_states: usize,
    pub elapsed_ms: f64,
}

/// Runs one algorithm on `instance` and checks the result before returning.
pub fn solve(
    instance: &Instance,
    problem: Problem,
    algorithm: Algorithm,
    epsilon: Option<Fraction>,
    p: Option<usize>,
    opts: SolveOptions<'_>,
    time_limit: Option<Duration>,
) -> Result<Solved, CliError> {
    let stats = match time_limit {
        Some(t) => DpStats::with_deadline(Instant::now() + t),
        None => DpStats::new(),
    };
    let opts = SolveOptions { stats: Some(&stats), ..opts };
    let need_eps = || epsilon.ok_or_else(|| CliError::Usage("missing epsilon".into()));
    let start = Instant::now();
    let (solution, kind) = match (problem, algorithm) {
        (Problem::Ssr, Algorithm::DpFptas) => (fptas_kssr_with(instance, need_eps()?, &opts)?, ProblemKind::Ssr),
        (Problem::Ssr, Algorithm::FastFptas) => (fast_fptas_kssr_with(instance, need_eps()?, &opts)?, ProblemKind::Ssr),
        (Problem::Ssr, Algorithm::ExactRestricted) => {
            let p = p.ok_or_else(|| CliError::Usage("missing p".into()))?;
            (exact_kssrr_with(instance, p, opts.stats)?, ProblemKind::SsrRestricted(p))
        }
        (Problem::Ssr, Algorithm::BruteForce) => (brute_force_kssr(instance)?, ProblemKind::Ssr),
        (Problem::Part, Algorithm::DpFptas) => (fptas_kpart_with(instance, need_eps()?, &opts)?, ProblemKind::Part),
        (Problem::Part, Algorithm::BruteForce) => (brute_force_kpart(instance)?, ProblemKind::Part),
        (Problem::Part, a) => return Err(CliError::Usage(format!("{a} solves ssr only"))),
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let report = check_feasible(solution.sets(), instance.n(), instance.k(), kind);
    assert!(report.is_feasible(), "{algorithm} returned an infeasible solution: {:?}", report.violation);
    Ok(Solved { solution, peak_states: stats.peak_states(), elapsed_ms })
}

fn ratio_json(r: ExtendedRational) -> Value {
    let r = r.reduced();
    let approx = if r.is_infinite() { Value::Null } else { json!(r.to_f64()) };
    json!({ "num": r.numer(), "den": r.denom(), "approx_float": approx })
}

/// Executes `config` and returns the text to print.
pub fn run(config: &RunConfig) -> Result<String, CliError> {
    config.validate()?;
    let instance = parse_instance_file(&config.input, config.k)?;
    let opts = SolveOptions { parallel: config.parallel, stop_at_one: config.stop_at_one, stats: None };
    let solved = solve(&instance, config.problem, config.algorithm, config.epsilon, config.p, opts, config.time_limit)?;
    let subsets = solved.solution.original_sets(&instance);
    let elapsed = if config.timing { json!(solved.elapsed_ms) } else { Value::Null };
    let eps = config.epsilon.map(|e| e.to_string());
    let ratio = solved.solution.ratio().reduced();
    Ok(match config.format {
        Format::Json => {
            let report = json!({
                "problem": config.problem.to_string(),
                "algorithm": config.algorithm.to_string(),
                "k": config.k,
                "epsilon": eps,
                "subsets": subsets,
                "sums": solved.solution.sums(),
                "ratio": ratio_json(ratio),
                "feasible": true,
                "elapsed_ms": elapsed,
                "dp_peak_states": solved.peak_states,
            });
            let mut s = serde_json::to_string_pretty(&report).expect("report serialises");
            s.push('\n');
            s
        }
        Format::CsvRow => {
            let sets = subsets
                .iter()
                .map(|s| s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("|");
            let sums = solved.solution.sums().iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ");
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            w.write_record([
                config.problem.to_string(),
                config.algorithm.to_string(),
                config.k.to_string(),
                eps.unwrap_or_default(),
                ratio.numer().to_string(),
                ratio.denom().to_string(),
                sets,
                sums,
                "true".to_string(),
                if config.timing { format!("{:.3}", solved.elapsed_ms) } else { String::new() },
            ])?;
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
        }
    })
}

/// Column order of the `csv-row` format.
pub const CSV_ROW_COLUMNS: [&str; 10] =
    ["problem", "algorithm", "k", "epsilon", "ratio_num", "ratio_den", "subsets", "sums", "feasible", "elapsed_ms"];

/// A benchmark matrix over a directory of instance files.
#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub dir: PathBuf,
    pub problem: Problem,
    pub k: usize,
    pub epsilons: Vec<Fraction>,
    pub algorithms: Vec<Algorithm>,
    /// Worker threads for rows; `None` uses the global pool.
    pub threads: Option<usize>,
    pub oracle_limits: OracleLimits,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub n: usize,
    pub k: usize,
    pub epsilon: String,
    pub algorithm: String,
    pub ratio_num: u64,
    pub ratio_den: u64,
    pub oracle_ratio: Option<String>,
    pub bound_ok: Option<bool>,
    #[serde(serialize_with = "millis")]
    pub elapsed_ms: f64,
    pub dp_peak_states: usize,
}

fn millis<S: serde::Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{v:.3}"))
}

/// CSV header of [`BenchRow`].
pub const BENCH_COLUMNS: [&str; 11] = [
    "instance",
    "n",
    "k",
    "epsilon",
    "algorithm",
    "ratio_num",
    "ratio_den",
    "oracle_ratio",
    "bound_ok",
    "elapsed_ms",
    "dp_peak_states",
];

fn instance_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let io = |e| CliError::Io(dir.display().to_string(), e);
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// One row per (instance, algorithm, ε), in that nesting order. The oracle
/// column is filled only for instances inside the oracle cap.
pub fn bench(config: &BenchConfig) -> Result<Vec<BenchRow>, CliError> {
    for &a in &config.algorithms {
        if a == Algorithm::ExactRestricted {
            return Err(CliError::Usage("exact-restricted needs --p and is not benchmarked".into()));
        }
        if config.problem == Problem::Part && a == Algorithm::FastFptas {
            return Err(CliError::Usage("fast-fptas solves ssr only".into()));
        }
    }
    let mut instances = Vec::new();
    for path in instance_files(&config.dir)? {
        let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        instances.push((name, parse_instance_file(&path, config.k)?));
    }
    let mut jobs = Vec::new();
    for (idx, _) in instances.iter().enumerate() {
        for &a in &config.algorithms {
            for &e in &config.epsilons {
                jobs.push((idx, a, e));
            }
        }
    }
    let oracle_of = |inst: &Instance| -> Result<Option<ExtendedRational>, CliError> {
        if !config.oracle_limits.admits(inst.n(), inst.k()) {
            return Ok(None);
        }
        let s = match config.problem {
            Problem::Ssr => brute_force_kssr(inst)?,
            Problem::Part => brute_force_kpart(inst)?,
        };
        Ok(Some(s.ratio()))
    };
    let work = || -> Result<Vec<BenchRow>, CliError> {
        let oracles = instances.par_iter().map(|(_, inst)| oracle_of(inst)).collect::<Result<Vec<_>, _>>()?;
        jobs.par_iter()
            .map(|&(idx, algorithm, eps)| {
                let (name, inst) = &instances[idx];
                let eps_arg = algorithm.is_fptas().then_some(eps);
                let solved = solve(inst, config.problem, algorithm, eps_arg, None, SolveOptions::default(), None)?;
                let r = solved.solution.ratio().reduced();
                let oracle = oracles[idx];
                Ok(BenchRow {
                    instance: name.clone(),
                    n: inst.n(),
                    k: inst.k(),
                    epsilon: eps.to_string(),
                    algorithm: algorithm.to_string(),
                    ratio_num: r.numer(),
                    ratio_den: r.denom(),
                    oracle_ratio: oracle.map(|o| o.reduced().to_string()),
                    bound_ok: oracle.map(|o| r.within_factor_of(&o, eps)),
                    elapsed_ms: solved.elapsed_ms,
                    dp_peak_states: solved.peak_states,
                })
            })
            .collect()
    };
    match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    }
}

/// Writes rows as CSV with the [`BENCH_COLUMNS`] header, even when empty.
pub fn write_bench_csv<W: std::io::Write>(rows: &[BenchRow], out: W) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(BENCH_COLUMNS)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| CliError::Io("csv output".into(), e))?;
    Ok(())
}

/// `n` values drawn uniformly from `lo..=hi` with a seeded generator.
pub fn generate(n: usize, lo: u64, hi: u64, seed: u64) -> Result<Vec<u64>, CliError> {
    if n == 0 || lo == 0 || lo > hi {
        return Err(CliError::Usage(format!("need n >= 1 and 1 <= min <= max, got n={n} range {lo}..={hi}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n).map(|_| rng.gen_range(lo..=hi)).collect())
}

/// Instance file text for `values`, one line.
pub fn format_instance(values: &[u64]) -> String {
    let mut s = values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_table_instance() {
        let a = parse_instance_str("16 16 18 20\n24 27 29 40", 4, "t").unwrap();
        assert_eq!(a.values(), &[16, 16, 18, 20, 24, 27, 29, 40]);
        assert_eq!(a.k(), 4);
    }

    #[test]
    fn skips_comments() {
        let a = parse_instance_str("# comment\n5 5", 2, "t").unwrap();
        assert_eq!(a.values(), &[5, 5]);
    }

    #[test]
    fn reports_line_of_bad_token() {
        match parse_instance_str("abc", 2, "t") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        match parse_instance_str("1 2\n# x\n3 -4", 2, "t") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_instance_str("1 0", 2, "t"), Err(CliError::Parse { line: 1, .. })));
        assert!(matches!(parse_instance_str("99999999999999999999", 2, "t"), Err(CliError::Parse { .. })));
        assert!(matches!(parse_instance_str("# only\n", 2, "t"), Err(CliError::Solver(Error::EmptyInstance))));
    }

    #[test]
    fn epsilon_parsing() {
        assert_eq!(parse_epsilon("0.1").unwrap(), Fraction::new(1, 10).unwrap());
        assert_eq!(parse_epsilon("1/100").unwrap(), Fraction::new(1, 100).unwrap());
        assert!(matches!(parse_epsilon("2"), Err(CliError::Usage(_))));
        assert!(matches!(parse_epsilon("1/1"), Err(CliError::Usage(_))));
    }

    #[test]
    fn keyword_round_trip() {
        for a in [Algorithm::DpFptas, Algorithm::FastFptas, Algorithm::ExactRestricted, Algorithm::BruteForce] {
            assert_eq!(a.to_string().parse::<Algorithm>().unwrap(), a);
        }
        assert!("greedy".parse::<Algorithm>().is_err());
    }

    #[test]
    fn generator_is_seeded() {
        let a = generate(20, 1, 40, 7).unwrap();
        assert_eq!(a, generate(20, 1, 40, 7).unwrap());
        assert!(a.iter().all(|&v| (1..=40).contains(&v)));
        assert!(generate(3, 5, 1, 0).is_err());
    }
}
