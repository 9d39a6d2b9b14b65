//! The `warpmean` command-line interface.
//!
//! Exit codes: 0 on success, 1 for usage and configuration problems, 2 for
//! data problems (missing or malformed files, unusable datasets), 3 when a
//! computation guard refuses the requested problem size.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use warpmean_core::{
    correctness_eval, dba, driftout_eval, dtw, exact_mean_dp, load_ucr, ssg,
    synthetic_random_walks, ucr_string, write_ucr, CorrectnessOptions, Dataset, DpGuard,
    DriftoutOptions, Error, EvalMethod, HeuristicConfig, Init, MeanResult, Result, Sample,
    TimeSeries,
};

#[derive(Parser)]
#[command(
    name = "warpmean",
    version,
    about = "Time series averaging under dynamic time warping",
    long_about = "Computes DTW distances, exact and heuristic means, and the two batch \
                  experiments that probe how mean-like those means are: midpoint \
                  correctness on pairs and drift-out on triples."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum MeanFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// DTW distance between two series files
    Dist {
        x: PathBuf,
        y: PathBuf,
        /// Also print an optimal warping path, one index pair per line
        #[arg(long)]
        path: bool,
    },
    /// Exact mean of two or three series files
    MeanExact {
        #[arg(required = true)]
        series: Vec<PathBuf>,
        /// Override the solver's series-length limits
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: MeanFormat,
        /// Write the result here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// DBA heuristic mean of any number of series files
    MeanDba {
        #[arg(required = true)]
        series: Vec<PathBuf>,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
        /// Convergence threshold on the per-iteration decrease
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Initialize from this member index instead of the medoid
        #[arg(long)]
        init: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: MeanFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Stochastic subgradient mean of any number of series files
    MeanSsg {
        #[arg(required = true)]
        series: Vec<PathBuf>,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
        /// First step size of the linear schedule
        #[arg(long, default_value_t = 0.2)]
        eta0: f64,
        /// Last step size of the linear schedule
        #[arg(long, default_value_t = 0.02)]
        eta1: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Initialize from this member index instead of the medoid
        #[arg(long)]
        init: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: MeanFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Midpoint-correctness experiment over UCR-format datasets
    EvalCorrectness {
        #[arg(required = true)]
        datasets: Vec<PathBuf>,
        /// Sampled pairs per dataset
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Z-normalize every series after loading
        #[arg(long)]
        normalize: bool,
        /// Override the solver's series-length limits
        #[arg(long)]
        max_n: Option<usize>,
        /// Worker threads (0 = one per core)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: ReportFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Drift-out experiment over UCR-format datasets
    EvalDriftout {
        #[arg(required = true)]
        datasets: Vec<PathBuf>,
        /// Sampled triples per dataset
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated subset of: dba, ssg, exact
        #[arg(long, value_delimiter = ',', default_value = "dba,ssg")]
        methods: Vec<String>,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
        #[arg(long, default_value_t = 0.2)]
        eta0: f64,
        #[arg(long, default_value_t = 0.02)]
        eta1: f64,
        /// Slack added to reference radii in the centrality test
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Z-normalize every series after loading
        #[arg(long)]
        normalize: bool,
        /// Override the solver's series-length limits
        #[arg(long)]
        max_n: Option<usize>,
        /// Worker threads (0 = one per core)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: ReportFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate a dataset of Gaussian random walks in UCR format
    GenSynthetic {
        /// Dataset name; also seeds the generator together with --seed
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 50)]
        length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the dataset here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Runs the CLI against `argv` and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidConfig(_)
        | Error::UnsupportedSampleSize(_)
        | Error::ReferenceSetSize(_)
        | Error::TooManyTrials { .. } => 1,
        Error::GuardExceeded { .. } => 3,
        _ => 2,
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Dist { x, y, path } => {
            let x = load_series_file(&x)?;
            let y = load_series_file(&y)?;
            let (dist, warping) = dtw(&x, &y);
            println!("{dist}");
            if path {
                for (i, j) in warping.points() {
                    println!("{i}\t{j}");
                }
            }
            Ok(())
        }
        Command::MeanExact {
            series,
            max_n,
            format,
            output,
        } => {
            let sample = load_sample(&series)?;
            let result = exact_mean_dp(&sample, &guard_from(max_n))?;
            emit(&output, &render_mean(&result, format)?)
        }
        Command::MeanDba {
            series,
            max_iter,
            tol,
            init,
            format,
            output,
        } => {
            let sample = load_sample(&series)?;
            let cfg = HeuristicConfig {
                max_iterations: max_iter,
                tolerance: tol,
                init: init.map(Init::Member).unwrap_or(Init::Medoid),
                ..HeuristicConfig::default()
            };
            let result = dba(&sample, &cfg)?;
            emit(&output, &render_mean(&result, format)?)
        }
        Command::MeanSsg {
            series,
            max_iter,
            eta0,
            eta1,
            seed,
            init,
            format,
            output,
        } => {
            let sample = load_sample(&series)?;
            let cfg = HeuristicConfig {
                max_iterations: max_iter,
                eta0,
                eta1,
                seed,
                init: init.map(Init::Member).unwrap_or(Init::Medoid),
                ..HeuristicConfig::default()
            };
            let result = ssg(&sample, &cfg)?;
            emit(&output, &render_mean(&result, format)?)
        }
        Command::EvalCorrectness {
            datasets,
            trials,
            seed,
            normalize,
            max_n,
            jobs,
            format,
            output,
        } => {
            let datasets = load_datasets(&datasets, normalize)?;
            let opts = CorrectnessOptions {
                trials,
                seed,
                guard: guard_from(max_n),
            };
            let report = with_pool(jobs, || correctness_eval(&datasets, &opts))?;
            let content = match format {
                ReportFormat::Csv => report.to_csv_string(),
                ReportFormat::Json => report.to_json_string()?,
            };
            emit(&output, &content)
        }
        Command::EvalDriftout {
            datasets,
            trials,
            seed,
            methods,
            max_iter,
            eta0,
            eta1,
            tol,
            normalize,
            max_n,
            jobs,
            format,
            output,
        } => {
            let datasets = load_datasets(&datasets, normalize)?;
            let methods = methods
                .iter()
                .map(|m| m.trim().parse::<EvalMethod>())
                .collect::<Result<Vec<_>>>()?;
            let opts = DriftoutOptions {
                trials,
                seed,
                methods,
                heuristic: HeuristicConfig {
                    max_iterations: max_iter,
                    eta0,
                    eta1,
                    ..HeuristicConfig::default()
                },
                tolerance: tol,
                guard: guard_from(max_n),
            };
            let report = with_pool(jobs, || driftout_eval(&datasets, &opts))?;
            let content = match format {
                ReportFormat::Csv => report.to_csv_string(),
                ReportFormat::Json => report.to_json_string()?,
            };
            emit(&output, &content)
        }
        Command::GenSynthetic {
            name,
            count,
            length,
            seed,
            output,
        } => {
            let dataset = synthetic_random_walks(&name, count, length, seed)?;
            match output {
                Some(path) => write_ucr(&dataset, path),
                None => {
                    print!("{}", ucr_string(&dataset));
                    Ok(())
                }
            }
        }
    }
}

/// Loads a single series: either one value per line, or one delimited row
/// (comma, tab, or whitespace). Lines are trimmed; blank lines are ignored.
fn load_series_file(path: &Path) -> Result<TimeSeries> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: display.clone(),
        source,
    })?;
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    if lines.is_empty() {
        return Err(Error::Parse {
            file: display,
            line: 1,
            message: "file contains no values".to_string(),
        });
    }

    let mut values = Vec::new();
    let mut push = |field: &str, line: usize| -> Result<()> {
        let value: f64 = field.parse().map_err(|_| Error::Parse {
            file: display.clone(),
            line,
            message: format!("cannot parse '{field}' as a number"),
        })?;
        if !value.is_finite() {
            return Err(Error::Parse {
                file: display.clone(),
                line,
                message: format!("non-finite value '{field}'"),
            });
        }
        values.push(value);
        Ok(())
    };
    if lines.len() == 1 {
        let (line_no, row) = lines[0];
        for field in row
            .split([',', '\t', ' '])
            .map(str::trim)
            .filter(|f| !f.is_empty())
        {
            push(field, line_no)?;
        }
    } else {
        for (line_no, line) in lines {
            push(line, line_no)?;
        }
    }
    TimeSeries::new(values)
}

fn load_sample(paths: &[PathBuf]) -> Result<Sample> {
    Sample::new(
        paths
            .iter()
            .map(|p| load_series_file(p))
            .collect::<Result<Vec<_>>>()?,
    )
}

fn load_datasets(paths: &[PathBuf], normalize: bool) -> Result<Vec<Dataset>> {
    paths
        .iter()
        .map(|p| {
            let ds = load_ucr(p)?;
            Ok(if normalize { ds.znormalized() } else { ds })
        })
        .collect()
}

fn guard_from(max_n: Option<usize>) -> DpGuard {
    match max_n {
        Some(n) => DpGuard {
            max_len_pair: n,
            max_len_triple: n,
        },
        None => DpGuard::default(),
    }
}

fn render_mean(result: &MeanResult, format: MeanFormat) -> Result<String> {
    Ok(match format {
        MeanFormat::Json => {
            let mut json = serde_json::to_string_pretty(result)?;
            json.push('\n');
            json
        }
        MeanFormat::Text => {
            let values: Vec<String> = result.mean.values().iter().map(f64::to_string).collect();
            format!(
                "method: {}\nlength: {}\nfrechet: {}\niterations: {}\nconverged: {}\nmean: {}\n",
                result.method,
                result.mean.len(),
                result.frechet_value,
                result.iterations,
                result.converged,
                values.join(" ")
            )
        }
    })
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, content).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Runs `f` on a dedicated pool of `jobs` threads, or on the global pool
/// when `jobs` is zero.
fn with_pool<F, R>(jobs: usize, f: F) -> Result<R>
where
    F: FnOnce() -> Result<R> + Send,
    R: Send,
{
    if jobs == 0 {
        return f();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot build a {jobs}-thread pool: {e}")))?;
    pool.install(f)
}
