use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::formats::{parse_channel, parse_code, parse_distribution};
use super::report::{
    experiment_csv, format_decimal, CapacityReport, CorrectProbabilityReport, DecodeReport,
    EntropyReport, MutualInformationReport,
};
use crate::capacity::{
    blahut_arimoto, bsc_capacity, SolverOptions, DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE,
};
use crate::channel::Channel;
use crate::coding::{
    exact_block_correct_probability, hamming_distance, min_distance_decode, repetition_code,
    BlockCode, Codeword,
};
use crate::error::{Error, ErrorClass};
use crate::experiment::{
    run_shannon_experiment_with_budget, ExperimentConfig, DEFAULT_COMPUTE_BUDGET,
};
use crate::prob::{entropy, LogBase};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const VALIDATION: i32 = 2;
    pub const NOT_CONVERGED: i32 = 3;
    pub const BUDGET: i32 = 4;
    pub const USAGE: i32 = 64;
}

/// Overrides the experiment compute budget (decoder bit-operations).
pub const BUDGET_ENV: &str = "SHANNON_COMPUTE_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "shannon",
    version,
    about = "Entropy, channel capacity and block-decoding experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Entropy of a probability vector.
    Entropy(EntropyArgs),
    /// Capacity of a discrete memoryless channel.
    Capacity(CapacityArgs),
    /// Mutual information and conditional entropies for a channel and input.
    MutualInfo(MutualInfoArgs),
    /// Nearest-codeword decoding of a received word.
    Decode(DecodeArgs),
    /// Exact probability of correct decoding over a BSC.
    PdExact(PdExactArgs),
    /// Random-coding experiment over a BSC across block lengths.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct DistributionSource {
    /// Comma-separated probabilities, e.g. 0.5,0.25,0.25
    #[arg(long, allow_hyphen_values = true)]
    dist: Option<String>,
    /// File holding probabilities separated by commas or whitespace
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EntropyArgs {
    #[command(flatten)]
    source: DistributionSource,
    #[arg(long, default_value_t = 2.0)]
    base: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct ChannelSource {
    /// Binary symmetric channel with this crossover probability
    #[arg(long)]
    bsc: Option<f64>,
    /// Channel file
    #[arg(long)]
    channel: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CapacityArgs {
    #[command(flatten)]
    source: ChannelSource,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITERATIONS)]
    max_iter: usize,
    #[arg(long, default_value_t = 2.0)]
    base: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct MutualInfoArgs {
    #[command(flatten)]
    source: ChannelSource,
    /// Input distribution, comma-separated
    #[arg(long, allow_hyphen_values = true)]
    input: String,
    #[arg(long, default_value_t = 2.0)]
    base: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct DecodeArgs {
    /// Code file
    #[arg(long)]
    code: PathBuf,
    /// Received word as a 0/1 string
    #[arg(long)]
    received: String,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct CodeSource {
    /// Code file
    #[arg(long)]
    code: Option<PathBuf>,
    /// Repetition code of this length
    #[arg(long)]
    repetition: Option<u32>,
}

#[derive(Debug, Args)]
struct PdExactArgs {
    #[command(flatten)]
    source: CodeSource,
    /// BSC crossover probability
    #[arg(long)]
    p: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// BSC crossover probability
    #[arg(long)]
    p: f64,
    /// Target rate R in bits per channel use
    #[arg(long)]
    rate: f64,
    /// Block lengths, comma-separated
    #[arg(long, value_delimiter = ',', required = true)]
    lengths: Vec<u32>,
    /// Trials per code
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Random codes per block length
    #[arg(long, default_value_t = 10)]
    codes: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report file; without it the report goes to standard output
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

/// Outcome of a command that ran to completion.
struct Output {
    stdout: String,
    code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            code: exit::SUCCESS,
        }
    }
}

/// Failure of a command, carrying the exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.class() {
            ErrorClass::Validation => exit::VALIDATION,
            ErrorClass::Budget => exit::BUDGET,
        };
        Failure {
            code,
            message: format!("{}: {e}", e.kind()),
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: exit::VALIDATION,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn with_path(path: &Path, e: Error) -> Failure {
    let mut f = Failure::from(e);
    f.message = format!("{}: {}", path.display(), f.message);
    f
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn load_channel(source: &ChannelSource) -> Result<(Channel, Option<f64>), Failure> {
    match (source.bsc, &source.channel) {
        (Some(p), _) => Ok((Channel::bsc(p)?, Some(p))),
        (None, Some(path)) => {
            let text = read_file(path)?;
            Ok((parse_channel(&text).map_err(|e| with_path(path, e))?, None))
        }
        (None, None) => unreachable!("clap enforces one channel source"),
    }
}

fn load_code(path: &Path) -> Result<BlockCode, Failure> {
    let text = read_file(path)?;
    parse_code(&text).map_err(|e| with_path(path, e))
}

fn cmd_entropy(args: &EntropyArgs) -> Result<Output, Failure> {
    let base = LogBase::new(args.base)?;
    let text = match (&args.source.dist, &args.source.file) {
        (Some(d), _) => d.clone(),
        (None, Some(path)) => read_file(path)?,
        (None, None) => unreachable!("clap enforces one distribution source"),
    };
    let d = parse_distribution(&text)?;
    let h = entropy(&d, base);
    Ok(Output::ok(if args.json {
        to_json(&EntropyReport {
            entropy: h,
            base: args.base,
        })
    } else {
        format!("{}\n", format_decimal(h))
    }))
}

fn cmd_capacity(args: &CapacityArgs) -> Result<Output, Failure> {
    let base = LogBase::new(args.base)?;
    let (channel, bsc) = load_channel(&args.source)?;
    let options = SolverOptions {
        tolerance: args.tol,
        max_iterations: args.max_iter,
        base,
    };
    let result = blahut_arimoto(&channel, options)?;
    let closed_form = bsc.map(|p| bsc_capacity(p, base)).transpose()?;
    let report = CapacityReport::new(&result, args.base, closed_form);
    let stdout = if args.json {
        to_json(&report)
    } else {
        report.to_text()
    };
    Ok(Output {
        stdout,
        code: if result.converged {
            exit::SUCCESS
        } else {
            exit::NOT_CONVERGED
        },
    })
}

fn cmd_mutual_info(args: &MutualInfoArgs) -> Result<Output, Failure> {
    let base = LogBase::new(args.base)?;
    let (channel, _) = load_channel(&args.source)?;
    let input = parse_distribution(&args.input)?;
    let e = channel.entropies(&input, base)?;
    let report = MutualInformationReport {
        mutual_information: channel.mutual_information(&input, base)?,
        input_entropy: e.input,
        output_entropy: e.output,
        output_given_input: e.output_given_input,
        input_given_output: e.input_given_output,
        base: args.base,
    };
    Ok(Output::ok(if args.json {
        to_json(&report)
    } else {
        report.to_text()
    }))
}

fn cmd_decode(args: &DecodeArgs) -> Result<Output, Failure> {
    let code = load_code(&args.code)?;
    let received: Codeword = args.received.parse()?;
    let index = min_distance_decode(&code, &received)?;
    let codeword = code.codeword(index);
    let report = DecodeReport {
        index,
        codeword: codeword.to_string(),
        distance: hamming_distance(&codeword, &received)?,
    };
    Ok(Output::ok(if args.json {
        to_json(&report)
    } else {
        report.to_text()
    }))
}

fn cmd_pd_exact(args: &PdExactArgs) -> Result<Output, Failure> {
    let code = match (&args.source.code, args.source.repetition) {
        (Some(path), _) => load_code(path)?,
        (None, Some(n)) => repetition_code(n)?,
        (None, None) => unreachable!("clap enforces one code source"),
    };
    let report = CorrectProbabilityReport {
        p: args.p,
        n: code.length(),
        codewords: code.size(),
        rate: code.rate(),
        correct_probability: exact_block_correct_probability(&code, args.p)?,
    };
    Ok(Output::ok(if args.json {
        to_json(&report)
    } else {
        report.to_text()
    }))
}

fn compute_budget() -> Result<u128, Failure> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Failure {
            code: exit::VALIDATION,
            message: format!("{BUDGET_ENV}={v:?} is not a nonnegative integer"),
        }),
        Err(_) => Ok(DEFAULT_COMPUTE_BUDGET),
    }
}

fn cmd_experiment(args: &ExperimentArgs, stderr: &mut dyn Write) -> Result<Output, Failure> {
    let config = ExperimentConfig {
        p: args.p,
        rate: args.rate,
        block_lengths: args.lengths.clone(),
        trials_per_n: args.trials,
        codes_per_n: args.codes,
        seed: args.seed,
    };
    let result = run_shannon_experiment_with_budget(&config, compute_budget()?)?;
    let document = match args.format {
        Format::Csv => experiment_csv(&result).map_err(|e| Failure {
            code: exit::VALIDATION,
            message: format!("csv: {e}"),
        })?,
        Format::Json => to_json(&result),
    };
    let summary: String = result
        .per_n
        .iter()
        .map(|r| {
            format!(
                "n={} M={} rate={} mean_correct={} stderr={}\n",
                r.n,
                r.codewords,
                format_decimal(r.achieved_rate),
                format_decimal(r.mean_correct_probability),
                format_decimal(r.standard_error),
            )
        })
        .collect();
    match &args.out {
        Some(path) => {
            std::fs::write(path, document).map_err(|e| Failure {
                code: exit::VALIDATION,
                message: format!("cannot write {}: {e}", path.display()),
            })?;
            Ok(Output::ok(summary))
        }
        None => {
            let _ = stderr.write_all(summary.as_bytes());
            Ok(Output::ok(document))
        }
    }
}

/// Runs the command line `args` (including the program name), writing data
/// to `stdout` and diagnostics to `stderr`. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::SUCCESS
            };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Entropy(a) => cmd_entropy(a),
        Command::Capacity(a) => cmd_capacity(a),
        Command::MutualInfo(a) => cmd_mutual_info(a),
        Command::Decode(a) => cmd_decode(a),
        Command::PdExact(a) => cmd_pd_exact(a),
        Command::Experiment(a) => cmd_experiment(a, stderr),
    };
    match outcome {
        Ok(out) => {
            let _ = stdout.write_all(out.stdout.as_bytes());
            if out.code == exit::NOT_CONVERGED {
                let _ = writeln!(
                    stderr,
                    "error: NotConverged: iteration limit reached before tolerance"
                );
            }
            out.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
