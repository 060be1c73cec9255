//! Error type shared across the library.

use crate::encoder::Sign;

/// Errors produced by signal construction and analysis operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A sample was NaN or infinite.
    #[error("sample at index {index} is not finite")]
    NonFiniteSample {
        /// Index of the offending sample.
        index: usize,
    },
    /// The sample rate was zero, negative, NaN, or infinite.
    #[error("sample rate must be a positive finite number of Hz")]
    NonPositiveRate,
    /// The requested sine frequency is at or above the Nyquist limit.
    #[error("frequency {freq_hz} Hz is not below half the sample rate {sample_rate_hz} Hz")]
    AliasedFrequency {
        /// Requested frequency in Hz.
        freq_hz: f64,
        /// Sample rate in Hz.
        sample_rate_hz: f64,
    },
    /// A waveform phase would span fewer than three samples at the given rate.
    #[error("{phase} phase spans {samples} samples; at least 3 are required")]
    DegeneratePhase {
        /// Which phase was too short.
        phase: &'static str,
        /// Number of samples the phase would span.
        samples: usize,
    },
    /// The rounded signs of a window match no realizable configuration.
    #[error("signs ({d_back}, {dd}, {d_fwd}) do not match any configuration")]
    InconsistentTriple {
        /// Sign of the backward difference.
        d_back: Sign,
        /// Sign of the second difference.
        dd: Sign,
        /// Sign of the forward difference.
        d_fwd: Sign,
    },
    /// The input has too few samples for the operation.
    #[error("input of length {len} is shorter than the required {min}")]
    TooShort {
        /// Actual length.
        len: usize,
        /// Minimum usable length.
        min: usize,
    },
    /// A histogram or run encoding was requested for zero symbols.
    #[error("symbol sequence is empty")]
    EmptySymbols,
    /// Window length or hop cannot produce any window.
    #[error("window length {window_len} with hop {hop} is not a usable sliding window")]
    BadWindow {
        /// Requested window length in samples.
        window_len: usize,
        /// Requested hop in samples.
        hop: usize,
    },
    /// The half-open sample range is invalid for the signal.
    #[error("range {start}..{end} is not a valid analysis range for length {len}")]
    BadRange {
        /// Range start (inclusive).
        start: usize,
        /// Range end (exclusive).
        end: usize,
        /// Signal length.
        len: usize,
    },
}

/// Convenience alias for results carrying [`Error`].
pub type Result<T> = std::result::Result<T, Error>;
