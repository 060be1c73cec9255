//! Signal construction, synthetic test waveforms, and seeded surrogates.

use crate::{Error, Real, Result};

/// A finite, uniformly sampled sequence of real amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal<F: Real> {
    samples: Vec<F>,
    sample_rate_hz: F,
}

impl<F: Real> Signal<F> {
    /// Validates samples and wraps them with their sample rate.
    ///
    /// # Errors
    ///
    /// [`Error::NonPositiveRate`] if the rate is not a positive finite
    /// number; [`Error::NonFiniteSample`] for the first NaN or infinite
    /// sample.
    pub fn new(samples: Vec<F>, sample_rate_hz: F) -> Result<Self> {
        if !sample_rate_hz.is_finite() || sample_rate_hz <= F::zero() {
            return Err(Error::NonPositiveRate);
        }
        if let Some(index) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::NonFiniteSample { index });
        }
        Ok(Self {
            samples,
            sample_rate_hz,
        })
    }

    /// Wraps samples that are already known to be finite.
    pub(crate) fn from_validated(samples: Vec<F>, sample_rate_hz: F) -> Self {
        debug_assert!(sample_rate_hz.is_finite() && sample_rate_hz > F::zero());
        debug_assert!(samples.iter().all(|s| s.is_finite()));
        Self {
            samples,
            sample_rate_hz,
        }
    }

    /// The samples in time order.
    pub fn samples(&self) -> &[F] {
        &self.samples
    }

    /// Sampling rate in Hz.
    pub fn sample_rate_hz(&self) -> F {
        self.sample_rate_hz
    }

    /// Time between consecutive samples, in seconds.
    pub fn sample_period_s(&self) -> F {
        F::one() / self.sample_rate_hz
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    /// Whether the signal has no samples.
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Generates `floor(duration_s · sample_rate_hz)` samples of
/// `amplitude · sin(2π · freq_hz · t)`.
///
/// # Errors
///
/// [`Error::AliasedFrequency`] when `freq_hz` is not below half the sample
/// rate.
///
/// # Panics
///
/// Panics if any argument is not strictly positive.
pub fn gen_sine<F: Real>(
    freq_hz: F,
    amplitude: F,
    sample_rate_hz: F,
    duration_s: F,
) -> Result<Signal<F>> {
    assert!(
        freq_hz > F::zero()
            && amplitude > F::zero()
            && sample_rate_hz > F::zero()
            && duration_s > F::zero(),
        "gen_sine arguments must be positive"
    );
    if freq_hz + freq_hz >= sample_rate_hz {
        return Err(Error::AliasedFrequency {
            freq_hz: freq_hz.to_f64().unwrap_or(f64::NAN),
            sample_rate_hz: sample_rate_hz.to_f64().unwrap_or(f64::NAN),
        });
    }
    let len = (duration_s * sample_rate_hz)
        .floor()
        .to_usize()
        .expect("sample count fits usize");
    let two_pi = F::PI() + F::PI();
    let samples = (0..len)
        .map(|n| {
            let t = F::from_usize(n).unwrap() / sample_rate_hz;
            amplitude * (two_pi * freq_hz * t).sin()
        })
        .collect();
    Ok(Signal::from_validated(samples, sample_rate_hz))
}

/// Builds a spike-shaped waveform: one baseline sample just below
/// `threshold`, a half-cosine rise to `peak_amp`, a half-cosine fall to
/// `trough_amp`, and a half-cosine recovery that ends exactly at
/// `threshold`.
///
/// Each phase spans `round(duration_ms · sample_rate_hz / 1000)` samples, so
/// the waveform crosses the threshold upward exactly once (during the rise)
/// and downward exactly once before the trough (during the fall), and the
/// recovery approaches the threshold from below.
///
/// # Errors
///
/// [`Error::DegeneratePhase`] when a phase would span fewer than three
/// samples.
///
/// # Panics
///
/// Panics unless `trough_amp < threshold < peak_amp` and the rate and
/// durations are positive.
pub fn gen_synthetic_ap<F: Real>(
    sample_rate_hz: F,
    peak_amp: F,
    trough_amp: F,
    threshold: F,
    rise_ms: F,
    fall_ms: F,
    recover_ms: F,
) -> Result<Signal<F>> {
    assert!(
        trough_amp < threshold && threshold < peak_amp,
        "amplitudes must satisfy trough_amp < threshold < peak_amp"
    );
    assert!(
        sample_rate_hz > F::zero()
            && rise_ms > F::zero()
            && fall_ms > F::zero()
            && recover_ms > F::zero(),
        "rate and phase durations must be positive"
    );
    let n_rise = phase_samples(rise_ms, sample_rate_hz, "rise")?;
    let n_fall = phase_samples(fall_ms, sample_rate_hz, "fall")?;
    let n_recover = phase_samples(recover_ms, sample_rate_hz, "recovery")?;
    let thousandth = F::from_f64(1e-3).unwrap();
    let baseline = threshold - (peak_amp - threshold) * thousandth;
    let mut samples = Vec::with_capacity(1 + n_rise + n_fall + n_recover);
    samples.push(baseline);
    extend_half_cosine(&mut samples, baseline, peak_amp, n_rise);
    extend_half_cosine(&mut samples, peak_amp, trough_amp, n_fall);
    extend_half_cosine(&mut samples, trough_amp, threshold, n_recover);
    Ok(Signal::from_validated(samples, sample_rate_hz))
}

fn phase_samples<F: Real>(duration_ms: F, sample_rate_hz: F, phase: &'static str) -> Result<usize> {
    let per_ms = F::from_f64(1e-3).unwrap();
    let n = (duration_ms * per_ms * sample_rate_hz)
        .round()
        .to_usize()
        .unwrap_or(0);
    if n < 3 {
        return Err(Error::DegeneratePhase { phase, samples: n });
    }
    Ok(n)
}

/// Appends `count` samples ramping from `from` (exclusive) to `to`, with the
/// final sample assigned `to` exactly.
fn extend_half_cosine<F: Real>(samples: &mut Vec<F>, from: F, to: F, count: usize) {
    let half = F::from_f64(0.5).unwrap();
    for k in 1..count {
        let angle = F::PI() * F::from_usize(k).unwrap() / F::from_usize(count).unwrap();
        let ramp = half * (F::one() - angle.cos());
        samples.push(from + (to - from) * ramp);
    }
    samples.push(to);
}

/// Returns a signal with the same amplitude multiset in a seeded random
/// order, at the same rate.
pub fn shuffle_surrogate<F: Real>(signal: &Signal<F>, seed: u64) -> Signal<F> {
    let mut samples = signal.samples().to_vec();
    let mut rng = SplitMix64::new(seed);
    for i in (1..samples.len()).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        samples.swap(i, j);
    }
    Signal::from_validated(samples, signal.sample_rate_hz())
}

/// 64-bit generator with a fixed, portable algorithm, so seeded runs
/// reproduce bit-for-bit across platforms and releases.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Creates a generator from a seed.
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Next raw 64-bit output.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Unbiased uniform draw from `[0, bound)`, by rejection.
    ///
    /// # Panics
    ///
    /// Panics if `bound` is zero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        let rem = (u64::MAX % bound).wrapping_add(1) % bound;
        let limit = u64::MAX - rem;
        loop {
            let v = self.next_u64();
            if v <= limit {
                return v % bound;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_accepts_empty_samples() {
        let signal = Signal::<f64>::new(vec![], 100.0).unwrap();
        assert!(signal.is_empty());
        assert_eq!(signal.len(), 0);
    }

    #[test]
    fn new_passes_samples_through() {
        let signal = Signal::new(vec![0.0, 1.0, 0.0], 256.0).unwrap();
        assert_eq!(signal.samples(), [0.0, 1.0, 0.0]);
        assert_eq!(signal.len(), 3);
        assert_eq!(signal.sample_rate_hz(), 256.0);
    }

    #[test]
    fn new_reports_first_non_finite_sample() {
        let err = Signal::new(vec![0.0, f64::NAN], 100.0).unwrap_err();
        assert_eq!(err, Error::NonFiniteSample { index: 1 });
        let err = Signal::new(vec![0.0, 1.0, f64::INFINITY, f64::NAN], 100.0).unwrap_err();
        assert_eq!(err, Error::NonFiniteSample { index: 2 });
    }

    #[test]
    fn new_rejects_bad_rates() {
        for rate in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            let err = Signal::new(vec![0.0], rate).unwrap_err();
            assert_eq!(err, Error::NonPositiveRate);
        }
    }

    #[test]
    fn sine_quarter_period_values() {
        let signal = gen_sine(1.0f64, 1.0, 4.0, 1.0).unwrap();
        let expected = [0.0, 1.0, 0.0, -1.0];
        assert_eq!(signal.len(), 4);
        for (got, want) in signal.samples().iter().zip(expected) {
            assert!((got - want).abs() <= 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn sine_scales_amplitude() {
        let signal = gen_sine(1.0f64, 2.0, 8.0, 1.0).unwrap();
        assert!((signal.samples()[2] - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn sine_length_is_floor_of_duration_times_rate() {
        let signal = gen_sine(10.0, 1.0, 256.0, 1.0).unwrap();
        assert_eq!(signal.len(), 256);
        let signal = gen_sine(1.0, 1.0, 10.0, 0.55).unwrap();
        assert_eq!(signal.len(), 5);
    }

    #[test]
    fn sine_rejects_aliased_frequency() {
        assert_eq!(
            gen_sine(2.0, 1.0, 4.0, 1.0).unwrap_err(),
            Error::AliasedFrequency {
                freq_hz: 2.0,
                sample_rate_hz: 4.0
            }
        );
        assert!(gen_sine(128.0, 1.0, 256.0, 1.0).is_err());
        assert!(gen_sine(127.0, 1.0, 256.0, 1.0).is_ok());
    }

    #[test]
    fn sine_is_bounded_by_amplitude() {
        let signal = gen_sine(3.0f64, 2.5, 100.0, 2.0).unwrap();
        assert!(signal.samples().iter().all(|s| s.abs() <= 2.5));
    }

    #[test]
    fn ap_hits_peak_trough_and_final_threshold_exactly() {
        let signal = gen_synthetic_ap(10_000.0, 40.0, -15.0, 0.0, 1.0, 2.0, 3.0).unwrap();
        assert_eq!(signal.len(), 1 + 10 + 20 + 30);
        let max = signal.samples().iter().cloned().fold(f64::MIN, f64::max);
        let min = signal.samples().iter().cloned().fold(f64::MAX, f64::min);
        assert!((max - 40.0).abs() <= 1e-9);
        assert!((min + 15.0).abs() <= 1e-9);
        assert_eq!(signal.samples()[10], 40.0);
        assert_eq!(signal.samples()[30], -15.0);
        assert_eq!(*signal.samples().last().unwrap(), 0.0);
    }

    #[test]
    fn ap_crosses_threshold_once_each_way_before_trough() {
        let signal = gen_synthetic_ap(10_000.0, 40.0, -15.0, 0.0, 1.0, 2.0, 3.0).unwrap();
        let s = signal.samples();
        let upward = s
            .windows(2)
            .filter(|w| w[0] <= 0.0 && w[1] > 0.0)
            .count();
        assert_eq!(upward, 1);
        let trough_index = 30;
        let downward_before_trough = s[..=trough_index]
            .windows(2)
            .filter(|w| w[0] > 0.0 && w[1] <= 0.0)
            .count();
        assert_eq!(downward_before_trough, 1);
    }

    #[test]
    fn ap_rejects_degenerate_phase() {
        let err = gen_synthetic_ap(100.0, 40.0, -15.0, 0.0, 0.1, 0.1, 0.1).unwrap_err();
        assert_eq!(
            err,
            Error::DegeneratePhase {
                phase: "rise",
                samples: 0
            }
        );
        let err = gen_synthetic_ap(10_000.0, 40.0, -15.0, 0.0, 1.0, 0.2, 3.0).unwrap_err();
        assert_eq!(
            err,
            Error::DegeneratePhase {
                phase: "fall",
                samples: 2
            }
        );
    }

    #[test]
    fn surrogate_of_empty_signal_is_empty() {
        let signal = Signal::<f64>::new(vec![], 100.0).unwrap();
        assert!(shuffle_surrogate(&signal, 3).is_empty());
    }

    #[test]
    fn surrogate_of_constant_signal_is_identity() {
        let signal = Signal::new(vec![5.0, 5.0, 5.0], 10.0).unwrap();
        assert_eq!(shuffle_surrogate(&signal, 7).samples(), signal.samples());
    }

    #[test]
    fn surrogate_preserves_the_amplitude_multiset() {
        let mut rng = SplitMix64::new(99);
        let samples: Vec<f64> = (0..1000).map(|_| rng.next_f64()).collect();
        let signal = Signal::new(samples.clone(), 100.0).unwrap();
        let surrogate = shuffle_surrogate(&signal, 12345);
        assert_eq!(surrogate.sample_rate_hz(), 100.0);
        let mut original = samples;
        let mut shuffled = surrogate.samples().to_vec();
        original.sort_by(f64::total_cmp);
        shuffled.sort_by(f64::total_cmp);
        assert_eq!(original, shuffled);
    }

    #[test]
    fn surrogate_is_deterministic_per_seed() {
        let signal = gen_sine(2.0, 1.0, 100.0, 1.0).unwrap();
        let a = shuffle_surrogate(&signal, 11);
        let b = shuffle_surrogate(&signal, 11);
        let c = shuffle_surrogate(&signal, 12);
        assert_eq!(a.samples(), b.samples());
        assert_ne!(a.samples(), c.samples());
    }

    #[test]
    fn splitmix_matches_the_reference_stream() {
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xe220_a839_7b1d_cdaf);
        assert_eq!(rng.next_u64(), 0x6e78_9e6a_a1b9_65f4);
        assert_eq!(rng.next_u64(), 0x06c4_5d18_8009_454f);
        assert_eq!(rng.next_u64(), 0xf88b_b8a8_724c_81ec);
        let mut rng = SplitMix64::new(42);
        assert_eq!(rng.next_u64(), 0xbdd7_3226_2feb_6e95);
    }

    #[test]
    fn below_stays_in_bounds_and_reaches_every_value() {
        let mut rng = SplitMix64::new(5);
        let mut seen = [false; 7];
        for _ in 0..1000 {
            seen[rng.below(7) as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn next_f64_is_in_unit_interval() {
        let mut rng = SplitMix64::new(8);
        for _ in 0..1000 {
            let v = rng.next_f64();
            assert!((0.0..1.0).contains(&v));
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn surrogate_multiset_equality(samples in proptest::collection::vec(-1e6f64..1e6, 0..200), seed: u64) {
                let signal = Signal::new(samples.clone(), 100.0).unwrap();
                let surrogate = shuffle_surrogate(&signal, seed);
                let mut original = samples;
                let mut shuffled = surrogate.samples().to_vec();
                original.sort_by(f64::total_cmp);
                shuffled.sort_by(f64::total_cmp);
                prop_assert_eq!(original, shuffled);
            }

            #[test]
            fn below_is_always_in_range(seed: u64, bound in 1u64..1_000_000) {
                let mut rng = SplitMix64::new(seed);
                for _ in 0..64 {
                    prop_assert!(rng.below(bound) < bound);
                }
            }
        }
    }
}
