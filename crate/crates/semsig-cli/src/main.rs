//! Command-line interface for shape-based signal analysis.
//!
//! Every subcommand loads a CSV or WAV input, runs one analysis, and
//! prints a single-line JSON report on stdout. Errors are JSON objects on
//! stderr: exit code 1 flags bad input or usage, 2 a computation the input
//! could not support.

mod io;
mod report;

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use semsig::{
    bhattacharyya, config_histogram, detect_spikes, dfa_accept, resample_study, semantic_entropy,
    semantic_information, shuffle_surrogate, sliding_entropy, symbolize, Calibration,
    ConfigHistogram, DetectorConfig, DfaState, Signal64,
};

use crate::io::{read_csv, read_wav, InputError};
use crate::report::{
    print_entropy_csv, print_histogram_csv, print_json, AcceptPayload, ComparePayload,
    EntropyPayload, HistogramPayload, InfoPayload, InputDescriptor, SpikeRow, SpikesPayload,
    StudyPayload, StudyRow, SurrogatePayload, SymbolizePayload,
};

/// Shape-based analysis of sampled signals.
#[derive(Parser)]
#[command(name = "semsig", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every interior sample into its configuration code (1-13).
    Symbolize {
        #[command(flatten)]
        input: InputArgs,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the symbol string through the five-state acceptor.
    Accept {
        #[command(flatten)]
        input: InputArgs,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Count configuration occurrences and densities.
    Histogram {
        #[command(flatten)]
        input: InputArgs,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Semantic entropy over sliding windows.
    Entropy {
        #[command(flatten)]
        input: InputArgs,
        /// Window length in samples; defaults to two seconds of input.
        #[arg(long)]
        window: Option<usize>,
        /// Stride between window starts in samples; defaults to a quarter
        /// second of input.
        #[arg(long)]
        hop: Option<usize>,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Detect spike-shaped excursions above a threshold.
    Spikes {
        #[command(flatten)]
        input: InputArgs,
        /// Detection threshold, in sample units.
        #[arg(long)]
        threshold: f64,
        /// Largest acceptable weight residual |w2 - w1 - w3|.
        #[arg(long, default_value_t = 0.02)]
        tolerance: f64,
        /// Largest onset-to-offset extent accepted, in seconds.
        #[arg(long)]
        max_duration: f64,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Bhattacharyya distance between two signals' configuration densities.
    Compare {
        /// First input file; .wav is parsed as RIFF/WAVE, anything else as
        /// CSV.
        path_a: PathBuf,
        /// Second input file, same formats.
        path_b: PathBuf,
        /// Sample rate in Hz for both inputs; required for CSV and
        /// overrides WAV headers.
        #[arg(long)]
        rate: Option<f64>,
        /// Zero-based column to read from CSV input.
        #[arg(long, default_value_t = 0)]
        column: usize,
        /// Half-width of the band of differences treated as zero.
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Refit the signal with a cubic spline and histogram its
    /// configurations at several rates.
    ResampleStudy {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated evaluation rates in Hz.
        #[arg(long, value_delimiter = ',', required = true)]
        rates: Vec<f64>,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Shuffle the samples into a surrogate signal.
    Surrogate {
        #[command(flatten)]
        input: InputArgs,
        /// Seed for the deterministic shuffle.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Accumulated |second difference times first difference| over a
    /// sample range.
    Info {
        #[command(flatten)]
        input: InputArgs,
        /// First sample of the range; defaults to 0.
        #[arg(long)]
        start: Option<usize>,
        /// One past the last sample of the range; defaults to the signal
        /// length.
        #[arg(long)]
        end: Option<usize>,
        /// Difference scaling.
        #[arg(long, value_enum, default_value_t = Mode::Analog)]
        mode: Mode,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Input file; .wav is parsed as RIFF/WAVE, anything else as CSV.
    path: PathBuf,
    /// Sample rate in Hz; required for CSV and overrides the WAV header.
    #[arg(long)]
    rate: Option<f64>,
    /// Zero-based column to read from CSV input.
    #[arg(long, default_value_t = 0)]
    column: usize,
    /// Half-width of the band of differences treated as zero.
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,
}

impl InputArgs {
    fn load(&self) -> Result<(Signal64, InputDescriptor), CliError> {
        check_epsilon(self.epsilon)?;
        load_input(&self.path, self.rate, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// One-line JSON report on stdout.
    Json,
    /// Bare CSV table (histogram and entropy only).
    Csv,
}

impl Format {
    fn require_json(self, command: &str) -> Result<(), CliError> {
        if self == Format::Csv {
            return Err(CliError::Usage(format!(
                "--format csv is only supported for histogram and entropy, not {command}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    /// Raw sample differences.
    Raw,
    /// Differences rescaled to analog units by the sample period.
    Analog,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Input(InputError),
    Computation(semsig::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Input(err) => err.kind(),
            CliError::Computation(err) => computation_kind(err),
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Computation(_) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(message) => f.write_str(message),
            CliError::Input(err) => err.fmt(f),
            CliError::Computation(err) => err.fmt(f),
        }
    }
}

fn computation_kind(err: &semsig::Error) -> &'static str {
    use semsig::Error;
    match err {
        Error::NonFiniteSample { .. } => "non_finite_sample",
        Error::NonPositiveRate => "non_positive_rate",
        Error::AliasedFrequency { .. } => "aliased_frequency",
        Error::DegeneratePhase { .. } => "degenerate_phase",
        Error::InconsistentTriple { .. } => "inconsistent_triple",
        Error::TooShort { .. } => "too_short",
        Error::EmptySymbols => "empty_symbols",
        Error::BadWindow { .. } => "bad_window",
        Error::BadRange { .. } => "bad_range",
    }
}

fn lib<T>(result: semsig::Result<T>) -> Result<T, CliError> {
    result.map_err(CliError::Computation)
}

fn check_epsilon(epsilon: f64) -> Result<(), CliError> {
    if epsilon.is_finite() && epsilon >= 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(
            "--epsilon must be a nonnegative finite number".to_string(),
        ))
    }
}

fn load_input(
    path: &Path,
    rate: Option<f64>,
    column: usize,
) -> Result<(Signal64, InputDescriptor), CliError> {
    let is_wav = path
        .extension()
        .is_some_and(|ext| ext.eq_ignore_ascii_case("wav"));
    let (samples, rate) = if is_wav {
        let wav = read_wav(path).map_err(CliError::Input)?;
        if wav.channels > 1 {
            eprintln!(
                "warning: {}: {} channels; using the first",
                path.display(),
                wav.channels
            );
        }
        (wav.samples, rate.unwrap_or(wav.sample_rate_hz))
    } else {
        let samples = read_csv(path, column).map_err(CliError::Input)?;
        let rate = rate.ok_or_else(|| {
            CliError::Input(InputError::MissingRate {
                path: path.to_path_buf(),
            })
        })?;
        (samples, rate)
    };
    let signal = Signal64::new(samples, rate).map_err(|err| {
        CliError::Input(InputError::Invalid {
            path: path.to_path_buf(),
            detail: err.to_string(),
        })
    })?;
    let descriptor = InputDescriptor {
        path: path.display().to_string(),
        sample_rate_hz: rate,
        samples: signal.len(),
    };
    Ok((signal, descriptor))
}

fn state_name(state: DfaState) -> &'static str {
    match state {
        DfaState::Start => "start",
        DfaState::Flat => "flat",
        DfaState::Falling => "falling",
        DfaState::Rising => "rising",
        DfaState::Dead => "dead",
    }
}

fn signal_histogram(signal: &Signal64, epsilon: f64) -> Result<ConfigHistogram, CliError> {
    let symbols = lib(symbolize(signal, epsilon))?;
    lib(config_histogram(&symbols))
}

fn emit_error(kind: &str, message: &str) {
    let body = serde_json::json!({ "error": { "kind": kind, "message": message } });
    eprintln!("{body}");
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(
                err.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) {
                err.exit();
            }
            emit_error("usage", err.to_string().trim_end());
            std::process::exit(1);
        }
    };
    if let Err(err) = run(cli) {
        emit_error(err.kind(), &err.to_string());
        std::process::exit(err.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Symbolize { input, format } => {
            format.require_json("symbolize")?;
            let (signal, descriptor) = input.load()?;
            let symbols = lib(symbolize(&signal, input.epsilon))?;
            print_json(
                "symbolize",
                vec![descriptor],
                SymbolizePayload {
                    epsilon: input.epsilon,
                    symbols: symbols.iter().map(|s| s.code()).collect(),
                },
            );
            Ok(())
        }
        Command::Accept { input, format } => {
            format.require_json("accept")?;
            let (signal, descriptor) = input.load()?;
            let symbols = lib(symbolize(&signal, input.epsilon))?;
            let result = dfa_accept(&symbols);
            print_json(
                "accept",
                vec![descriptor],
                AcceptPayload {
                    epsilon: input.epsilon,
                    accepted: result.accepted,
                    final_state: state_name(result.final_state).to_string(),
                    trace: result.trace.iter().map(|s| s.tag()).collect(),
                    rejection_index: result.rejection_index,
                },
            );
            Ok(())
        }
        Command::Histogram { input, format } => {
            let (signal, descriptor) = input.load()?;
            let hist = signal_histogram(&signal, input.epsilon)?;
            match format {
                Format::Json => print_json(
                    "histogram",
                    vec![descriptor],
                    HistogramPayload {
                        epsilon: input.epsilon,
                        total: hist.total(),
                        counts: hist.counts().to_vec(),
                        densities: hist.densities().to_vec(),
                    },
                ),
                Format::Csv => print_histogram_csv(hist.counts(), &hist.densities()),
            }
            Ok(())
        }
        Command::Entropy {
            input,
            window,
            hop,
            format,
        } => {
            let (signal, descriptor) = input.load()?;
            let rate = signal.sample_rate_hz();
            let window = window.unwrap_or_else(|| ((2.0 * rate).round() as usize).max(3));
            let hop = hop.unwrap_or_else(|| ((0.25 * rate).round() as usize).max(1));
            let series = lib(sliding_entropy(&signal, window, hop, input.epsilon))?;
            match format {
                Format::Json => print_json(
                    "entropy",
                    vec![descriptor],
                    EntropyPayload {
                        epsilon: input.epsilon,
                        window_len: series.window_len,
                        hop: series.hop,
                        start_indices: series.start_indices,
                        values: series.values,
                    },
                ),
                Format::Csv => print_entropy_csv(&series.start_indices, &series.values),
            }
            Ok(())
        }
        Command::Spikes {
            input,
            threshold,
            tolerance,
            max_duration,
            format,
        } => {
            format.require_json("spikes")?;
            let (signal, descriptor) = input.load()?;
            let config = DetectorConfig::new(threshold, max_duration)
                .with_tolerance(tolerance)
                .with_epsilon(input.epsilon);
            let events = lib(detect_spikes(&signal, &config))?;
            print_json(
                "spikes",
                vec![descriptor],
                SpikesPayload {
                    threshold,
                    tolerance,
                    max_duration_s: max_duration,
                    epsilon: input.epsilon,
                    count: events.len(),
                    events: events
                        .iter()
                        .map(|event| SpikeRow {
                            onset_index: event.onset_index,
                            peak_index: event.peak_index,
                            trough_index: event.trough_index,
                            offset_index: event.offset_index,
                            w1: event.w1,
                            w2: event.w2,
                            w3: event.w3,
                            residual: event.residual,
                        })
                        .collect(),
                },
            );
            Ok(())
        }
        Command::Compare {
            path_a,
            path_b,
            rate,
            column,
            epsilon,
            format,
        } => {
            format.require_json("compare")?;
            check_epsilon(epsilon)?;
            let (signal_a, descriptor_a) = load_input(&path_a, rate, column)?;
            let (signal_b, descriptor_b) = load_input(&path_b, rate, column)?;
            let hist_a = signal_histogram(&signal_a, epsilon)?;
            let hist_b = signal_histogram(&signal_b, epsilon)?;
            let distance = bhattacharyya(&hist_a, &hist_b);
            print_json(
                "compare",
                vec![descriptor_a, descriptor_b],
                ComparePayload {
                    epsilon,
                    distance: distance.is_finite().then_some(distance),
                    disjoint_support: distance.is_infinite(),
                    densities_a: hist_a.densities().to_vec(),
                    densities_b: hist_b.densities().to_vec(),
                },
            );
            Ok(())
        }
        Command::ResampleStudy {
            input,
            rates,
            format,
        } => {
            format.require_json("resample-study")?;
            if rates.iter().any(|r| !r.is_finite() || *r <= 0.0) {
                return Err(CliError::Usage(
                    "--rates must all be positive finite numbers".to_string(),
                ));
            }
            let (signal, descriptor) = input.load()?;
            let study = lib(resample_study(&signal, &rates, input.epsilon))?;
            print_json(
                "resample-study",
                vec![descriptor],
                StudyPayload {
                    epsilon: input.epsilon,
                    rows: study
                        .iter()
                        .map(|(rate, hist)| StudyRow {
                            rate_hz: *rate,
                            total: hist.total(),
                            counts: hist.counts().to_vec(),
                            densities: hist.densities().to_vec(),
                            semantic_entropy: semantic_entropy(hist),
                        })
                        .collect(),
                },
            );
            Ok(())
        }
        Command::Surrogate {
            input,
            seed,
            format,
        } => {
            format.require_json("surrogate")?;
            let (signal, descriptor) = input.load()?;
            let surrogate = shuffle_surrogate(&signal, seed);
            print_json(
                "surrogate",
                vec![descriptor],
                SurrogatePayload {
                    seed,
                    sample_rate_hz: surrogate.sample_rate_hz(),
                    samples: surrogate.samples().to_vec(),
                },
            );
            Ok(())
        }
        Command::Info {
            input,
            start,
            end,
            mode,
            format,
        } => {
            format.require_json("info")?;
            let (signal, descriptor) = input.load()?;
            let start = start.unwrap_or(0);
            let end = end.unwrap_or_else(|| signal.len());
            let calibration = match mode {
                Mode::Raw => Calibration::Raw,
                Mode::Analog => Calibration::Analog,
            };
            let value = lib(semantic_information(&signal, start, end, calibration))?;
            print_json(
                "info",
                vec![descriptor],
                InfoPayload {
                    start,
                    end,
                    mode: match mode {
                        Mode::Raw => "raw",
                        Mode::Analog => "analog",
                    },
                    value,
                },
            );
            Ok(())
        }
    }
}
