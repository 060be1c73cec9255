//! Input readers: CSV columns and RIFF/WAVE audio.

use std::fmt;
use std::path::{Path, PathBuf};

/// Failure to load samples from an input file.
#[derive(Debug)]
pub enum InputError {
    /// The file could not be read.
    Io {
        /// Offending file.
        path: PathBuf,
        /// Underlying filesystem error.
        source: std::io::Error,
    },
    /// The container structure is malformed.
    CorruptHeader {
        /// Offending file.
        path: PathBuf,
        /// What was malformed.
        detail: String,
    },
    /// The container is well formed but uses an unsupported encoding.
    UnsupportedFormat {
        /// Offending file.
        path: PathBuf,
        /// The encoding encountered.
        detail: String,
    },
    /// A CSV cell could not be parsed as a finite number.
    Parse {
        /// Offending file.
        path: PathBuf,
        /// One-based line number.
        line: usize,
        /// The cell and what was expected.
        detail: String,
    },
    /// A CSV row does not contain the requested column.
    MissingColumn {
        /// Offending file.
        path: PathBuf,
        /// One-based line number.
        line: usize,
        /// Zero-based column that was requested.
        column: usize,
    },
    /// CSV input carries no rate of its own, so `--rate` is required.
    MissingRate {
        /// Offending file.
        path: PathBuf,
    },
    /// The loaded samples or rate fail signal validation.
    Invalid {
        /// Offending file.
        path: PathBuf,
        /// Validation message.
        detail: String,
    },
}

impl InputError {
    /// Stable machine-readable tag for the error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            InputError::Io { .. } => "io",
            InputError::CorruptHeader { .. } => "corrupt_header",
            InputError::UnsupportedFormat { .. } => "unsupported_format",
            InputError::Parse { .. } => "parse",
            InputError::MissingColumn { .. } => "missing_column",
            InputError::MissingRate { .. } => "missing_rate",
            InputError::Invalid { .. } => "invalid_input",
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            InputError::CorruptHeader { path, detail } => {
                write!(f, "{}: {detail}", path.display())
            }
            InputError::UnsupportedFormat { path, detail } => {
                write!(f, "{}: {detail}", path.display())
            }
            InputError::Parse { path, line, detail } => {
                write!(f, "{}:{line}: {detail}", path.display())
            }
            InputError::MissingColumn { path, line, column } => {
                write!(f, "{}:{line}: column {column} is missing", path.display())
            }
            InputError::MissingRate { path } => {
                write!(f, "{}: CSV input requires --rate", path.display())
            }
            InputError::Invalid { path, detail } => write!(f, "{}: {detail}", path.display()),
        }
    }
}

impl std::error::Error for InputError {}

/// Parses one numeric column from a CSV file.
///
/// The first line is skipped as a header when its selected cell is missing
/// or not a number; blank lines are skipped everywhere. Every other
/// unparsable or non-finite cell is an error carrying its one-based line
/// number.
pub fn read_csv(path: &Path, column: usize) -> Result<Vec<f64>, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut samples = Vec::new();
    for (number, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l)) {
        if line.trim().is_empty() {
            continue;
        }
        let cell = match line.split(',').nth(column) {
            Some(cell) => cell.trim(),
            None if number == 1 => continue,
            None => {
                return Err(InputError::MissingColumn {
                    path: path.to_path_buf(),
                    line: number,
                    column,
                })
            }
        };
        match cell.parse::<f64>() {
            Ok(value) if value.is_finite() => samples.push(value),
            Ok(_) => {
                return Err(InputError::Parse {
                    path: path.to_path_buf(),
                    line: number,
                    detail: format!("non-finite sample {cell:?}"),
                })
            }
            Err(_) if number == 1 => continue,
            Err(_) => {
                return Err(InputError::Parse {
                    path: path.to_path_buf(),
                    line: number,
                    detail: format!("expected a number, found {cell:?}"),
                })
            }
        }
    }
    Ok(samples)
}

/// Decoded contents of a WAV file.
#[derive(Debug)]
pub struct WavData {
    /// First-channel samples; PCM16 is scaled to [-1, 1).
    pub samples: Vec<f64>,
    /// Rate declared by the header, in Hz.
    pub sample_rate_hz: f64,
    /// Channel count declared by the header.
    pub channels: u16,
}

/// Reads a RIFF/WAVE file holding PCM16 or IEEE-float32 samples.
///
/// Multichannel files decode to their first channel. Chunks other than
/// `fmt ` and `data` are skipped, honoring the RIFF odd-size pad byte.
pub fn read_wav(path: &Path) -> Result<WavData, InputError> {
    let bytes = std::fs::read(path).map_err(|source| InputError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let corrupt = |detail: &str| InputError::CorruptHeader {
        path: path.to_path_buf(),
        detail: detail.to_string(),
    };
    let unsupported = |detail: String| InputError::UnsupportedFormat {
        path: path.to_path_buf(),
        detail,
    };

    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(corrupt("not a RIFF/WAVE file"));
    }

    let mut fmt: Option<(u16, u16, u32, u16)> = None;
    let mut data: Option<&[u8]> = None;
    let mut offset = 12;
    while offset + 8 <= bytes.len() {
        let id = &bytes[offset..offset + 4];
        let size = u32::from_le_bytes(bytes[offset + 4..offset + 8].try_into().unwrap()) as usize;
        let body_start = offset + 8;
        let body_end = body_start
            .checked_add(size)
            .filter(|&end| end <= bytes.len())
            .ok_or_else(|| corrupt("chunk size exceeds file length"))?;
        let body = &bytes[body_start..body_end];
        match id {
            b"fmt " => {
                if body.len() < 16 {
                    return Err(corrupt("fmt chunk shorter than 16 bytes"));
                }
                fmt = Some((
                    u16::from_le_bytes(body[0..2].try_into().unwrap()),
                    u16::from_le_bytes(body[2..4].try_into().unwrap()),
                    u32::from_le_bytes(body[4..8].try_into().unwrap()),
                    u16::from_le_bytes(body[14..16].try_into().unwrap()),
                ));
            }
            b"data" => data = Some(body),
            _ => {}
        }
        offset = body_end + size % 2;
    }

    let (format, channels, rate, bits) = fmt.ok_or_else(|| corrupt("missing fmt chunk"))?;
    let data = data.ok_or_else(|| corrupt("missing data chunk"))?;
    if channels == 0 {
        return Err(corrupt("fmt chunk declares zero channels"));
    }
    if rate == 0 {
        return Err(corrupt("fmt chunk declares a zero sample rate"));
    }
    let bytes_per_sample = match (format, bits) {
        (1, 16) => 2,
        (3, 32) => 4,
        (1, other) => {
            return Err(unsupported(format!(
                "{other}-bit PCM; only 16-bit PCM and 32-bit IEEE float are supported"
            )))
        }
        (3, other) => {
            return Err(unsupported(format!(
                "{other}-bit IEEE float; only 16-bit PCM and 32-bit IEEE float are supported"
            )))
        }
        (other, _) => {
            return Err(unsupported(format!(
                "format tag {other}; only 16-bit PCM and 32-bit IEEE float are supported"
            )))
        }
    };

    let frame = bytes_per_sample * usize::from(channels);
    if data.len() % frame != 0 {
        return Err(corrupt("data chunk is not a whole number of frames"));
    }
    let samples = data
        .chunks_exact(frame)
        .map(|chunk| match bytes_per_sample {
            2 => f64::from(i16::from_le_bytes(chunk[0..2].try_into().unwrap())) / 32768.0,
            _ => f64::from(f32::from_le_bytes(chunk[0..4].try_into().unwrap())),
        })
        .collect();
    Ok(WavData {
        samples,
        sample_rate_hz: f64::from(rate),
        channels,
    })
}
