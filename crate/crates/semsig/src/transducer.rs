//! Edge weights from amplitude increments and threshold-crossing spike
//! detection via the cumulative-weight balance.

use crate::encoder::{sign_of, symbolize, ConfigSymbol, Sign};
use crate::{Error, Real, Result, Signal};

/// Weight of one unit-time segment: `|arctan(b/a)|` in degrees, divided
/// by 90.
///
/// The magnitude is taken so rising and falling segments weigh the same and
/// every weight lies in `[0, 1)`.
pub fn edge_weight<F: Real>(b: F, a: F) -> F {
    debug_assert!(a > F::zero());
    (b / a).atan().abs() / F::FRAC_PI_2()
}

/// Per-edge weights of a signal.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector<F: Real> {
    /// `weights[n]` is the weight of the segment from sample `n` to `n + 1`.
    pub weights: Vec<F>,
}

/// Computes the weight of every edge with unit time step, yielding `len - 1`
/// weights.
///
/// # Errors
///
/// [`Error::TooShort`] for signals of fewer than two samples.
pub fn weight_vector<F: Real>(signal: &Signal<F>) -> Result<WeightVector<F>> {
    let s = signal.samples();
    if s.len() < 2 {
        return Err(Error::TooShort {
            len: s.len(),
            min: 2,
        });
    }
    let weights = s
        .windows(2)
        .map(|w| edge_weight(w[1] - w[0], F::one()))
        .collect();
    Ok(WeightVector { weights })
}

/// One detected spike with its landmark indices and cumulative weights.
#[derive(Debug, Clone, PartialEq)]
pub struct SpikeEvent<F: Real> {
    /// Last sample at or below the threshold before the upward crossing.
    pub onset_index: usize,
    /// First peak-configuration sample after the onset.
    pub peak_index: usize,
    /// First trough-configuration sample below the threshold after the peak.
    pub trough_index: usize,
    /// First sample after the trough at which the signal returns to the
    /// threshold or the recovery slope turns negative.
    pub offset_index: usize,
    /// Cumulative weight from onset to peak.
    pub w1: F,
    /// Cumulative weight from peak to trough.
    pub w2: F,
    /// Cumulative weight from trough to offset.
    pub w3: F,
    /// `|w2 - w1 - w3|`.
    pub residual: F,
}

/// Detection parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectorConfig<F: Real> {
    /// Crossing level, in signal units.
    pub threshold: F,
    /// Largest residual accepted as balanced, in weight units.
    pub tolerance: F,
    /// Longest accepted onset-to-offset duration, in seconds.
    pub max_duration_s: F,
    /// Sign tolerance used when symbolizing.
    pub epsilon: F,
}

impl<F: Real> DetectorConfig<F> {
    /// Configuration with the default tolerance 0.02 and epsilon 0.
    pub fn new(threshold: F, max_duration_s: F) -> Self {
        Self {
            threshold,
            tolerance: F::from_f64(0.02).unwrap(),
            max_duration_s,
            epsilon: F::zero(),
        }
    }

    /// Replaces the residual tolerance.
    pub fn with_tolerance(mut self, tolerance: F) -> Self {
        self.tolerance = tolerance;
        self
    }

    /// Replaces the sign tolerance.
    pub fn with_epsilon(mut self, epsilon: F) -> Self {
        self.epsilon = epsilon;
        self
    }
}

/// Scans for upward threshold crossings and emits every excursion whose
/// fall weight balances the rise and recovery weights within tolerance and
/// whose onset-to-offset duration fits `max_duration_s`.
///
/// The weight of a segment only approximates its amplitude change when
/// per-sample increments are small, so callers should scale amplitudes to
/// keep increments well below one signal unit per sample. A completed
/// excursion consumes the scan up to its offset whether or not it is
/// emitted; an excursion the signal never completes advances the scan by one
/// sample.
///
/// # Errors
///
/// [`Error::TooShort`] for signals of fewer than three samples;
/// [`Error::InconsistentTriple`] propagated from symbolization when
/// `config.epsilon > 0`.
pub fn detect_spikes<F: Real>(
    signal: &Signal<F>,
    config: &DetectorConfig<F>,
) -> Result<Vec<SpikeEvent<F>>> {
    let s = signal.samples();
    if s.len() < 3 {
        return Err(Error::TooShort {
            len: s.len(),
            min: 3,
        });
    }
    let symbols = symbolize(signal, config.epsilon)?;
    let weights = weight_vector(signal)?.weights;
    let period = signal.sample_period_s();

    let mut events = Vec::new();
    let mut i = 0;
    while i + 1 < s.len() {
        if !(s[i] <= config.threshold && s[i + 1] > config.threshold) {
            i += 1;
            continue;
        }
        match find_landmarks(s, &symbols, config, i) {
            Some((peak, trough, offset)) => {
                let w1 = cumulative(&weights[i..peak]);
                let w2 = cumulative(&weights[peak..trough]);
                let w3 = cumulative(&weights[trough..offset]);
                let residual = (w2 - w1 - w3).abs();
                let duration_s = F::from_usize(offset - i).unwrap() * period;
                if residual <= config.tolerance && duration_s <= config.max_duration_s {
                    events.push(SpikeEvent {
                        onset_index: i,
                        peak_index: peak,
                        trough_index: trough,
                        offset_index: offset,
                        w1,
                        w2,
                        w3,
                        residual,
                    });
                }
                i = offset;
            }
            None => i += 1,
        }
    }
    Ok(events)
}

fn cumulative<F: Real>(weights: &[F]) -> F {
    weights.iter().fold(F::zero(), |acc, &w| acc + w)
}

/// Finds the peak, trough, and offset landmarks for a crossing at `onset`,
/// or `None` when the rest of the signal never completes the pattern.
///
/// The symbol of interior sample `k` is `symbols[k - 1]`.
fn find_landmarks<F: Real>(
    s: &[F],
    symbols: &[ConfigSymbol],
    config: &DetectorConfig<F>,
    onset: usize,
) -> Option<(usize, usize, usize)> {
    let last_interior = s.len() - 2;
    let peak = (onset + 1..=last_interior).find(|&k| symbols[k - 1].code() == 6)?;
    let trough = (peak + 1..=last_interior)
        .find(|&k| symbols[k - 1].code() == 5 && s[k] < config.threshold)?;
    let offset = (trough + 1..s.len()).find(|&r| {
        s[r] >= config.threshold
            || (r + 1 < s.len() && sign_of(s[r + 1] - s[r], config.epsilon) == Sign::Minus)
    })?;
    Some((peak, trough, offset))
}
