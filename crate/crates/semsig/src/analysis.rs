//! Configuration histograms, entropies, histogram distance, and range
//! information.

use crate::encoder::{symbolize, ConfigSymbol};
use crate::{Error, Real, Result, Signal};

/// Occurrence counts and densities of the thirteen configurations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigHistogram {
    counts: [u64; ConfigSymbol::COUNT],
    total: u64,
}

impl ConfigHistogram {
    /// Counts the symbols of a nonempty sequence.
    ///
    /// # Errors
    ///
    /// [`Error::EmptySymbols`] for an empty sequence.
    pub fn from_symbols(symbols: &[ConfigSymbol]) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptySymbols);
        }
        let mut counts = [0u64; ConfigSymbol::COUNT];
        for &symbol in symbols {
            counts[symbol.index()] += 1;
        }
        Ok(Self {
            counts,
            total: symbols.len() as u64,
        })
    }

    /// Builds a histogram from explicit counts.
    ///
    /// # Errors
    ///
    /// [`Error::EmptySymbols`] when every count is zero.
    pub fn from_counts(counts: [u64; ConfigSymbol::COUNT]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::EmptySymbols);
        }
        Ok(Self { counts, total })
    }

    /// Occurrence counts in symbol-code order.
    pub fn counts(&self) -> &[u64; ConfigSymbol::COUNT] {
        &self.counts
    }

    /// Total number of symbols counted.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Density of one symbol.
    pub fn density(&self, symbol: ConfigSymbol) -> f64 {
        self.counts[symbol.index()] as f64 / self.total as f64
    }

    /// All densities in symbol-code order.
    pub fn densities(&self) -> [f64; ConfigSymbol::COUNT] {
        self.counts.map(|c| c as f64 / self.total as f64)
    }

    /// Sum of the densities of the given symbol codes.
    ///
    /// # Panics
    ///
    /// Panics if a code is outside 1 through 13.
    pub fn density_sum(&self, codes: impl IntoIterator<Item = u8>) -> f64 {
        codes
            .into_iter()
            .map(|code| {
                let symbol = ConfigSymbol::new(code).expect("symbol code in 1..=13");
                self.density(symbol)
            })
            .sum()
    }
}

/// Counts the configuration occurrences of a symbol sequence.
///
/// # Errors
///
/// [`Error::EmptySymbols`] for an empty sequence.
pub fn config_histogram(symbols: &[ConfigSymbol]) -> Result<ConfigHistogram> {
    ConfigHistogram::from_symbols(symbols)
}

/// Shannon entropy of the configuration distribution, in bits, with
/// `0·log 0` taken as zero.
pub fn semantic_entropy(hist: &ConfigHistogram) -> f64 {
    hist.densities()
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

/// Windowed semantic entropy over a signal.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropySeries {
    /// Samples per window.
    pub window_len: usize,
    /// Stride between window starts, in samples.
    pub hop: usize,
    /// Entropy of each complete window, in window order.
    pub values: Vec<f64>,
    /// Sample index at which each window starts.
    pub start_indices: Vec<usize>,
}

/// Semantic entropy of every complete sliding window; a final partial
/// window is dropped.
///
/// # Errors
///
/// [`Error::BadWindow`] unless `window_len >= 3` and `hop >= 1`;
/// [`Error::TooShort`] when the signal is shorter than one window;
/// [`Error::InconsistentTriple`] propagated when `epsilon > 0`.
pub fn sliding_entropy<F: Real>(
    signal: &Signal<F>,
    window_len: usize,
    hop: usize,
    epsilon: F,
) -> Result<EntropySeries> {
    if window_len < 3 || hop == 0 {
        return Err(Error::BadWindow { window_len, hop });
    }
    let len = signal.len();
    if len < window_len {
        return Err(Error::TooShort {
            len,
            min: window_len,
        });
    }
    // The symbols of the window starting at `start` are the full signal's
    // symbols `start..start + window_len - 2`, since classification only
    // looks at the three samples around each interior point.
    let symbols = symbolize(signal, epsilon)?;
    let mut values = Vec::new();
    let mut start_indices = Vec::new();
    let mut start = 0;
    while start + window_len <= len {
        let hist = ConfigHistogram::from_symbols(&symbols[start..start + window_len - 2])?;
        values.push(semantic_entropy(&hist));
        start_indices.push(start);
        start += hop;
    }
    Ok(EntropySeries {
        window_len,
        hop,
        values,
        start_indices,
    })
}

/// Bhattacharyya distance between two configuration distributions.
///
/// Identical densities give exactly zero; disjoint supports give
/// [`f64::INFINITY`].
pub fn bhattacharyya(p: &ConfigHistogram, q: &ConfigHistogram) -> f64 {
    let pd = p.densities();
    let qd = q.densities();
    if pd == qd {
        return 0.0;
    }
    let coefficient: f64 = pd.iter().zip(&qd).map(|(&a, &b)| (a * b).sqrt()).sum();
    if coefficient == 0.0 {
        f64::INFINITY
    } else {
        -coefficient.min(1.0).ln()
    }
}

/// Difference scaling for [`semantic_information`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Calibration {
    /// Raw sample differences; each window contributes `|s''·s'| · T`.
    Raw,
    /// Differences rescaled to analog units (`s'` divided by `T`, `s''` by
    /// `T²`) before the same `· T` quadrature, so the sum converges to the
    /// underlying integral as the rate grows.
    Analog,
}

/// Accumulated magnitude of the second-difference times first-difference
/// product over the interior points of `start..end`.
///
/// # Errors
///
/// [`Error::BadRange`] unless `start < end <= len` and `end - start >= 3`.
pub fn semantic_information<F: Real>(
    signal: &Signal<F>,
    start: usize,
    end: usize,
    calibration: Calibration,
) -> Result<F> {
    let len = signal.len();
    if start >= end || end > len || end - start < 3 {
        return Err(Error::BadRange { start, end, len });
    }
    let s = signal.samples();
    let period = signal.sample_period_s();
    let scale = match calibration {
        Calibration::Raw => period,
        Calibration::Analog => F::one() / (period * period),
    };
    let mut sum = F::zero();
    for k in start + 1..end - 1 {
        let d_back = s[k] - s[k - 1];
        let d_fwd = s[k + 1] - s[k];
        let dd = d_fwd - d_back;
        sum = sum + (dd * d_back).abs();
    }
    Ok(sum * scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::gen_sine;
    use approx::assert_relative_eq;

    fn sym(code: u8) -> ConfigSymbol {
        ConfigSymbol::new(code).unwrap()
    }

    fn syms(codes: &[u8]) -> Vec<ConfigSymbol> {
        codes.iter().map(|&c| sym(c)).collect()
    }

    fn counts_for(pairs: &[(u8, u64)]) -> [u64; 13] {
        let mut counts = [0u64; 13];
        for &(code, count) in pairs {
            counts[usize::from(code) - 1] = count;
        }
        counts
    }

    const MAX_ENTROPY: f64 = 3.700439718141092;

    #[test]
    fn histogram_counts_and_densities() {
        let hist = config_histogram(&syms(&[6, 5, 6])).unwrap();
        assert_eq!(hist.total(), 3);
        assert_eq!(hist.counts()[sym(6).index()], 2);
        assert_eq!(hist.counts()[sym(5).index()], 1);
        assert_relative_eq!(hist.density(sym(6)), 2.0 / 3.0);
        assert_eq!(hist.density_sum([5, 6]), 1.0);
    }

    #[test]
    fn histogram_of_one_symbol_is_degenerate() {
        let hist = config_histogram(&syms(&[9, 9, 9, 9])).unwrap();
        assert_eq!(hist.density(sym(9)), 1.0);
        for code in (1..=13).filter(|&c| c != 9) {
            assert_eq!(hist.density(sym(code)), 0.0);
        }
    }

    #[test]
    fn histogram_rejects_empty_input() {
        assert_eq!(config_histogram(&[]).unwrap_err(), Error::EmptySymbols);
        assert_eq!(
            ConfigHistogram::from_counts([0; 13]).unwrap_err(),
            Error::EmptySymbols
        );
    }

    #[test]
    fn smooth_sine_concentrates_on_the_no_tie_curvature_configurations() {
        let signal = gen_sine(2.0, 1.0, 256.0, 10.0).unwrap();
        let symbols = symbolize(&signal, 0.0).unwrap();
        let hist = config_histogram(&symbols).unwrap();
        assert!(hist.density_sum(1..=4) > 0.9);
    }

    #[test]
    fn entropy_of_a_degenerate_distribution_is_zero() {
        let hist = ConfigHistogram::from_counts(counts_for(&[(9, 4)])).unwrap();
        assert_eq!(semantic_entropy(&hist), 0.0);
    }

    #[test]
    fn entropy_of_the_uniform_distribution_is_maximal() {
        let hist = ConfigHistogram::from_counts([1; 13]).unwrap();
        assert_relative_eq!(semantic_entropy(&hist), MAX_ENTROPY, epsilon = 1e-12);
    }

    #[test]
    fn entropy_of_a_three_two_split() {
        let hist = ConfigHistogram::from_counts(counts_for(&[(6, 3), (5, 2)])).unwrap();
        assert_relative_eq!(
            semantic_entropy(&hist),
            0.9709505944546686,
            epsilon = 1e-15
        );
    }

    #[test]
    fn sliding_entropy_of_a_constant_signal_is_zero() {
        let signal = Signal::new(vec![2.5; 100], 100.0).unwrap();
        let series = sliding_entropy(&signal, 50, 10, 0.0).unwrap();
        assert!(!series.values.is_empty());
        assert!(series.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn sliding_entropy_with_window_equal_to_length_has_one_value() {
        let signal = Signal::new(vec![0.0, 1.0, 0.0, 1.0, 0.0], 10.0).unwrap();
        let series = sliding_entropy(&signal, 5, 2, 0.0).unwrap();
        assert_eq!(series.values.len(), 1);
        assert_eq!(series.start_indices, [0]);
    }

    #[test]
    fn sliding_entropy_of_the_zigzag_matches_the_direct_count_oracle() {
        let samples: Vec<f64> = (0..40).map(|n| f64::from(n % 2)).collect();
        let signal = Signal::new(samples, 256.0).unwrap();

        // Window 5 holds three symbols splitting 2:1.
        let series = sliding_entropy(&signal, 5, 1, 0.0).unwrap();
        let two_one = -(2.0 / 3.0) * (2.0f64 / 3.0).log2() - (1.0 / 3.0) * (1.0f64 / 3.0).log2();
        assert_relative_eq!(two_one, 0.9182958340544896, epsilon = 1e-15);
        for &value in &series.values {
            assert_relative_eq!(value, two_one, epsilon = 1e-12);
        }

        // Window 7 holds five symbols splitting 3:2.
        let series = sliding_entropy(&signal, 7, 1, 0.0).unwrap();
        let three_two = -0.6 * 0.6f64.log2() - 0.4 * 0.4f64.log2();
        assert_relative_eq!(three_two, 0.9709505944546686, epsilon = 1e-15);
        for &value in &series.values {
            assert_relative_eq!(value, three_two, epsilon = 1e-12);
            assert!((value - 0.9710).abs() <= 1e-3);
        }
    }

    #[test]
    fn sliding_entropy_drops_the_partial_tail_window() {
        let signal = Signal::new(vec![0.0; 10], 10.0).unwrap();
        let series = sliding_entropy(&signal, 5, 4, 0.0).unwrap();
        assert_eq!(series.start_indices, [0, 4]);
        assert_eq!(series.window_len, 5);
        assert_eq!(series.hop, 4);
    }

    #[test]
    fn sliding_entropy_rejects_bad_parameters() {
        let signal = Signal::new(vec![0.0; 10], 10.0).unwrap();
        assert_eq!(
            sliding_entropy(&signal, 2, 1, 0.0).unwrap_err(),
            Error::BadWindow {
                window_len: 2,
                hop: 1
            }
        );
        assert_eq!(
            sliding_entropy(&signal, 5, 0, 0.0).unwrap_err(),
            Error::BadWindow {
                window_len: 5,
                hop: 0
            }
        );
        assert_eq!(
            sliding_entropy(&signal, 11, 1, 0.0).unwrap_err(),
            Error::TooShort { len: 10, min: 11 }
        );
    }

    #[test]
    fn distance_between_identical_histograms_is_exactly_zero() {
        let hist = config_histogram(&syms(&[6, 5, 6, 1, 2])).unwrap();
        assert_eq!(bhattacharyya(&hist, &hist), 0.0);
        let scaled =
            ConfigHistogram::from_counts(hist.counts().map(|c| c * 3)).unwrap();
        assert_eq!(bhattacharyya(&hist, &scaled), 0.0);
    }

    #[test]
    fn distance_between_disjoint_histograms_is_infinite() {
        let p = ConfigHistogram::from_counts(counts_for(&[(1, 5)])).unwrap();
        let q = ConfigHistogram::from_counts(counts_for(&[(2, 5)])).unwrap();
        assert_eq!(bhattacharyya(&p, &q), f64::INFINITY);
    }

    #[test]
    fn distance_matches_the_closed_form_on_the_two_bin_fixture() {
        let p = ConfigHistogram::from_counts(counts_for(&[(1, 1), (2, 1)])).unwrap();
        let q = ConfigHistogram::from_counts(counts_for(&[(1, 1), (2, 3)])).unwrap();
        let expected = -((1.0f64 / 8.0).sqrt() + (3.0f64 / 8.0).sqrt()).ln();
        assert_relative_eq!(expected, 0.03466823209753704, epsilon = 1e-15);
        assert_relative_eq!(bhattacharyya(&p, &q), expected, epsilon = 1e-12);
    }

    #[test]
    fn information_of_straight_signals_is_zero() {
        let line = Signal::new((0..50).map(f64::from).collect(), 100.0).unwrap();
        assert_eq!(
            semantic_information(&line, 0, 50, Calibration::Raw).unwrap(),
            0.0
        );
        let constant = Signal::new(vec![4.0; 50], 100.0).unwrap();
        assert_eq!(
            semantic_information(&constant, 0, 50, Calibration::Analog).unwrap(),
            0.0
        );
    }

    #[test]
    fn information_rejects_bad_ranges() {
        let signal = Signal::new(vec![0.0; 10], 10.0).unwrap();
        for (start, end) in [(0, 0), (5, 5), (6, 5), (0, 11), (4, 6)] {
            assert_eq!(
                semantic_information(&signal, start, end, Calibration::Raw).unwrap_err(),
                Error::BadRange {
                    start,
                    end,
                    len: 10
                }
            );
        }
    }

    #[test]
    fn raw_and_analog_calibrations_differ_by_the_cubed_period() {
        let signal = gen_sine(2.0f64, 1.0, 64.0, 1.0).unwrap();
        let raw = semantic_information(&signal, 0, 64, Calibration::Raw).unwrap();
        let analog = semantic_information(&signal, 0, 64, Calibration::Analog).unwrap();
        let period = signal.sample_period_s();
        assert_relative_eq!(raw, analog * period.powi(3), max_relative = 1e-12);
    }

    #[test]
    fn information_is_additive_up_to_the_two_boundary_windows() {
        let signal = gen_sine(3.0f64, 1.0, 200.0, 1.0).unwrap();
        let s = signal.samples();
        let period = signal.sample_period_s();
        let (a, b, c) = (0, 80, 200);
        let whole = semantic_information(&signal, a, c, Calibration::Raw).unwrap();
        let left = semantic_information(&signal, a, b, Calibration::Raw).unwrap();
        let right = semantic_information(&signal, b, c, Calibration::Raw).unwrap();
        let boundary: f64 = [b - 1, b]
            .iter()
            .map(|&k| {
                let d_back = s[k] - s[k - 1];
                let d_fwd = s[k + 1] - s[k];
                ((d_fwd - d_back) * d_back).abs() * period
            })
            .sum();
        assert_relative_eq!(whole, left + right + boundary, max_relative = 1e-9);
    }

    #[test]
    fn analog_information_of_a_unit_sine_approaches_the_integral() {
        let two_pi = std::f64::consts::TAU;
        let signal = gen_sine(1.0 / two_pi, 1.0, 1000.0, two_pi).unwrap();
        let info =
            semantic_information(&signal, 0, signal.len(), Calibration::Analog).unwrap();
        assert_relative_eq!(info, 2.0, max_relative = 0.01);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn count_array() -> impl Strategy<Value = [u64; 13]> {
            proptest::array::uniform13(0u64..50)
                .prop_filter("nonzero total", |c| c.iter().sum::<u64>() > 0)
        }

        proptest! {
            #[test]
            fn densities_sum_to_one(counts in count_array()) {
                let hist = ConfigHistogram::from_counts(counts).unwrap();
                let sum: f64 = hist.densities().iter().sum();
                prop_assert!((sum - 1.0).abs() <= 1e-12);
            }

            #[test]
            fn entropy_stays_within_bounds(counts in count_array()) {
                let hist = ConfigHistogram::from_counts(counts).unwrap();
                let entropy = semantic_entropy(&hist);
                prop_assert!((0.0..=MAX_ENTROPY + 1e-12).contains(&entropy));
                let degenerate = hist.densities().iter().any(|&p| p == 1.0);
                prop_assert_eq!(entropy == 0.0, degenerate);
            }

            #[test]
            fn distance_is_symmetric_and_nonnegative(
                p_counts in count_array(),
                q_counts in count_array(),
            ) {
                let p = ConfigHistogram::from_counts(p_counts).unwrap();
                let q = ConfigHistogram::from_counts(q_counts).unwrap();
                let pq = bhattacharyya(&p, &q);
                let qp = bhattacharyya(&q, &p);
                prop_assert_eq!(pq, qp);
                prop_assert!(pq >= 0.0);
                if p.densities() != q.densities() {
                    prop_assert!(pq > 1e-10);
                }
            }
        }
    }
}
