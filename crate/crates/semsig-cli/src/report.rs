//! Report envelope and payload types emitted by the subcommands.

use serde::Serialize;

/// One loaded input file.
#[derive(Debug, Clone, Serialize)]
pub struct InputDescriptor {
    /// Path as given on the command line.
    pub path: String,
    /// Sample rate the signal carries, in Hz.
    pub sample_rate_hz: f64,
    /// Number of samples loaded.
    pub samples: usize,
}

/// Envelope wrapping every JSON payload.
#[derive(Debug, Serialize)]
pub struct Report<P: Serialize> {
    /// Version of the emitting binary.
    pub tool_version: &'static str,
    /// Subcommand that produced the payload.
    pub command: &'static str,
    /// Inputs in command-line order.
    pub inputs: Vec<InputDescriptor>,
    /// Subcommand-specific result.
    pub payload: P,
}

/// Serializes one report as a single JSON line on stdout.
pub fn print_json<P: Serialize>(command: &'static str, inputs: Vec<InputDescriptor>, payload: P) {
    let report = Report {
        tool_version: env!("CARGO_PKG_VERSION"),
        command,
        inputs,
        payload,
    };
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
}

/// Prints the histogram as a bare CSV table.
pub fn print_histogram_csv(counts: &[u64; 13], densities: &[f64; 13]) {
    println!("symbol,count,density");
    for (i, (&count, &density)) in counts.iter().zip(densities).enumerate() {
        println!("{},{},{:.16e}", i + 1, count, density);
    }
}

/// Prints the entropy series as a bare CSV table.
pub fn print_entropy_csv(start_indices: &[usize], values: &[f64]) {
    println!("start_index,entropy");
    for (&start, &value) in start_indices.iter().zip(values) {
        println!("{start},{value:.16e}");
    }
}

/// Result of `symbolize`.
#[derive(Debug, Serialize)]
pub struct SymbolizePayload {
    /// Tie tolerance used.
    pub epsilon: f64,
    /// Configuration codes (1-13), one per interior sample.
    pub symbols: Vec<u8>,
}

/// Result of `accept`.
#[derive(Debug, Serialize)]
pub struct AcceptPayload {
    /// Tie tolerance used.
    pub epsilon: f64,
    /// Whether the whole string was consumed into an accepting state.
    pub accepted: bool,
    /// State after the last consumed symbol.
    pub final_state: String,
    /// One state tag (S, A, B, C, D) per consumed symbol.
    pub trace: String,
    /// Index of the first rejected symbol, if any.
    pub rejection_index: Option<usize>,
}

/// Result of `histogram`.
#[derive(Debug, Serialize)]
pub struct HistogramPayload {
    /// Tie tolerance used.
    pub epsilon: f64,
    /// Number of symbols counted.
    pub total: u64,
    /// Occurrence counts for codes 1 through 13.
    pub counts: Vec<u64>,
    /// Densities for codes 1 through 13.
    pub densities: Vec<f64>,
}

/// Result of `entropy`.
#[derive(Debug, Serialize)]
pub struct EntropyPayload {
    /// Tie tolerance used.
    pub epsilon: f64,
    /// Samples per window.
    pub window_len: usize,
    /// Stride between window starts, in samples.
    pub hop: usize,
    /// Sample index at which each window starts.
    pub start_indices: Vec<usize>,
    /// Semantic entropy of each window, in bits.
    pub values: Vec<f64>,
}

/// One detected spike.
#[derive(Debug, Serialize)]
pub struct SpikeRow {
    /// Last sample at or below the threshold before the upward crossing.
    pub onset_index: usize,
    /// First peak-configuration sample after the onset.
    pub peak_index: usize,
    /// First trough-configuration sample below the threshold after the peak.
    pub trough_index: usize,
    /// First sample after the trough at which the signal recovers.
    pub offset_index: usize,
    /// Cumulative weight from onset to peak.
    pub w1: f64,
    /// Cumulative weight from peak to trough.
    pub w2: f64,
    /// Cumulative weight from trough to offset.
    pub w3: f64,
    /// |w2 - w1 - w3|.
    pub residual: f64,
}

/// Result of `spikes`.
#[derive(Debug, Serialize)]
pub struct SpikesPayload {
    /// Detection threshold, in sample units.
    pub threshold: f64,
    /// Largest residual emitted.
    pub tolerance: f64,
    /// Largest onset-to-offset extent emitted, in seconds.
    pub max_duration_s: f64,
    /// Tie tolerance used.
    pub epsilon: f64,
    /// Number of events.
    pub count: usize,
    /// Detected events in onset order.
    pub events: Vec<SpikeRow>,
}

/// Result of `compare`.
#[derive(Debug, Serialize)]
pub struct ComparePayload {
    /// Tie tolerance used.
    pub epsilon: f64,
    /// Bhattacharyya distance, or `null` when the supports are disjoint.
    pub distance: Option<f64>,
    /// Whether the two densities share no configuration.
    pub disjoint_support: bool,
    /// Densities of the first input for codes 1 through 13.
    pub densities_a: Vec<f64>,
    /// Densities of the second input for codes 1 through 13.
    pub densities_b: Vec<f64>,
}

/// One rate of a `resample-study`.
#[derive(Debug, Serialize)]
pub struct StudyRow {
    /// Evaluation rate, in Hz.
    pub rate_hz: f64,
    /// Number of symbols counted at this rate.
    pub total: u64,
    /// Occurrence counts for codes 1 through 13.
    pub counts: Vec<u64>,
    /// Densities for codes 1 through 13.
    pub densities: Vec<f64>,
    /// Semantic entropy of the histogram, in bits.
    pub semantic_entropy: f64,
}

/// Result of `resample-study`.
#[derive(Debug, Serialize)]
pub struct StudyPayload {
    /// Tie tolerance used.
    pub epsilon: f64,
    /// One row per requested rate, in request order.
    pub rows: Vec<StudyRow>,
}

/// Result of `surrogate`.
#[derive(Debug, Serialize)]
pub struct SurrogatePayload {
    /// Shuffle seed.
    pub seed: u64,
    /// Rate carried over from the input, in Hz.
    pub sample_rate_hz: f64,
    /// Shuffled samples.
    pub samples: Vec<f64>,
}

/// Result of `info`.
#[derive(Debug, Serialize)]
pub struct InfoPayload {
    /// First sample of the range.
    pub start: usize,
    /// One past the last sample of the range.
    pub end: usize,
    /// Difference scaling: `raw` or `analog`.
    pub mode: &'static str,
    /// Accumulated information.
    pub value: f64,
}
