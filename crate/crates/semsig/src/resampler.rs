//! Cubic-spline reconstruction, rate conversion, and shape-run
//! segmentation.

use crate::analysis::{config_histogram, ConfigHistogram};
use crate::encoder::{symbolize, ConfigSymbol};
use crate::{Error, Real, Result, Signal};

/// A natural cubic spline fitted through a signal's samples.
///
/// Piece `i` covers `[knots[i], knots[i + 1]]` and stores coefficients
/// `[a, b, c, d]` of `a + b·dt + c·dt² + d·dt³` in `dt = t - knots[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineModel<F> {
    knots: Vec<F>,
    coefficients: Vec<[F; 4]>,
}

impl<F: Real> SplineModel<F> {
    /// Times of the fitted samples, strictly increasing.
    pub fn knots(&self) -> &[F] {
        &self.knots
    }

    /// Per-piece coefficients `[a, b, c, d]`, one row per knot interval.
    pub fn coefficients(&self) -> &[[F; 4]] {
        &self.coefficients
    }

    /// Index of the piece evaluated at `t`; times outside the knot range
    /// extrapolate the nearest end piece.
    fn interval(&self, t: F) -> usize {
        if t <= self.knots[0] {
            return 0;
        }
        let upper = self.knots.partition_point(|&k| k <= t);
        (upper - 1).min(self.coefficients.len() - 1)
    }

    /// Spline value at time `t`.
    pub fn evaluate(&self, t: F) -> F {
        let i = self.interval(t);
        let dt = t - self.knots[i];
        let [a, b, c, d] = self.coefficients[i];
        ((d * dt + c) * dt + b) * dt + a
    }

    /// Spline value, first derivative, and second derivative at time `t`.
    pub fn evaluate_with_derivatives(&self, t: F) -> (F, F, F) {
        let two = F::one() + F::one();
        let three = two + F::one();
        let i = self.interval(t);
        let dt = t - self.knots[i];
        let [a, b, c, d] = self.coefficients[i];
        let value = ((d * dt + c) * dt + b) * dt + a;
        let first = (three * d * dt + two * c) * dt + b;
        let second = two * c + (three + three) * d * dt;
        (value, first, second)
    }
}

/// Fits a natural cubic spline through `(n·T, s[n])`.
///
/// The knot second derivatives solve the standard tridiagonal system with
/// zero curvature imposed at both ends.
///
/// # Errors
///
/// [`Error::TooShort`] when the signal has fewer than 3 samples.
pub fn fit_cubic_spline<F: Real>(signal: &Signal<F>) -> Result<SplineModel<F>> {
    let n = signal.len();
    if n < 3 {
        return Err(Error::TooShort { len: n, min: 3 });
    }
    let s = signal.samples();
    let rate = signal.sample_rate_hz();
    let h = signal.sample_period_s();
    let knots: Vec<F> = (0..n)
        .map(|i| F::from_usize(i).expect("knot index representable") / rate)
        .collect();

    let m = knot_second_derivatives(s, h);

    let two = F::one() + F::one();
    let six = (two + F::one()) * two;
    let coefficients = (0..n - 1)
        .map(|i| {
            let a = s[i];
            let b = (s[i + 1] - s[i]) / h - h * (two * m[i] + m[i + 1]) / six;
            let c = m[i] / two;
            let d = (m[i + 1] - m[i]) / (six * h);
            [a, b, c, d]
        })
        .collect();
    Ok(SplineModel {
        knots,
        coefficients,
    })
}

/// Solves `M[i-1] + 4 M[i] + M[i+1] = 6 ((s[i+1]-s[i]) - (s[i]-s[i-1])) / h²`
/// for the interior knots, with `M[0] = M[n-1] = 0`, by the Thomas
/// algorithm.
fn knot_second_derivatives<F: Real>(s: &[F], h: F) -> Vec<F> {
    let n = s.len();
    let interior = n - 2;
    let mut m = vec![F::zero(); n];
    let two = F::one() + F::one();
    let four = two + two;
    let six_over_h2 = (four + two) / (h * h);

    let mut upper = vec![F::zero(); interior];
    let mut rhs = vec![F::zero(); interior];
    for i in 0..interior {
        let k = i + 1;
        let dd = (s[k + 1] - s[k]) - (s[k] - s[k - 1]);
        rhs[i] = six_over_h2 * dd;
    }
    upper[0] = F::one() / four;
    rhs[0] = rhs[0] / four;
    for i in 1..interior {
        let denom = four - upper[i - 1];
        upper[i] = F::one() / denom;
        rhs[i] = (rhs[i] - rhs[i - 1]) / denom;
    }
    m[interior] = rhs[interior - 1];
    for i in (0..interior - 1).rev() {
        m[i + 1] = rhs[i] - upper[i] * m[i + 2];
    }
    m
}

/// Evaluates the spline on the uniform grid `t = k / new_rate_hz` over the
/// knot range; the result carries `new_rate_hz`.
///
/// # Panics
///
/// Panics unless `new_rate_hz` is positive and finite.
pub fn resample<F: Real>(spline: &SplineModel<F>, new_rate_hz: F) -> Signal<F> {
    assert!(
        new_rate_hz.is_finite() && new_rate_hz > F::zero(),
        "sample rate must be positive and finite"
    );
    let eight = {
        let two = F::one() + F::one();
        two * two * two
    };
    let last = *spline.knots().last().expect("spline has knots");
    let cutoff = last * (F::one() + eight * F::epsilon());
    let mut samples = Vec::new();
    for k in 0.. {
        let t = F::from_usize(k).expect("grid index representable") / new_rate_hz;
        if t > cutoff {
            break;
        }
        samples.push(spline.evaluate(t));
    }
    Signal::from_validated(samples, new_rate_hz)
}

/// Whether a configuration continues a smooth stretch or marks a break.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RunKind {
    /// Both slopes of the window share one sign; the point extends a
    /// smooth shape.
    Smooth,
    /// The slope sign changes across the window: a peak, a trough, or an
    /// onset or arrest of motion.
    Break,
}

impl RunKind {
    /// Classifies a configuration by comparing its backward and forward
    /// slope signs.
    pub fn of(symbol: ConfigSymbol) -> Self {
        let triple = symbol.triple();
        if triple.d_back == triple.d_fwd {
            RunKind::Smooth
        } else {
            RunKind::Break
        }
    }
}

/// A maximal stretch of one repeated configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShapeRun {
    /// The repeated configuration.
    pub symbol: ConfigSymbol,
    /// Index of the run's first symbol in the input sequence.
    pub start_index: usize,
    /// Number of consecutive occurrences.
    pub length: usize,
    /// Smooth-or-break classification of the configuration.
    pub kind: RunKind,
}

/// Run-length encodes a symbol sequence into maximal shape runs.
///
/// # Errors
///
/// [`Error::EmptySymbols`] for an empty sequence.
pub fn shape_runs(symbols: &[ConfigSymbol]) -> Result<Vec<ShapeRun>> {
    if symbols.is_empty() {
        return Err(Error::EmptySymbols);
    }
    let mut runs: Vec<ShapeRun> = Vec::new();
    for (index, &symbol) in symbols.iter().enumerate() {
        match runs.last_mut() {
            Some(run) if run.symbol == symbol => run.length += 1,
            _ => runs.push(ShapeRun {
                symbol,
                start_index: index,
                length: 1,
                kind: RunKind::of(symbol),
            }),
        }
    }
    Ok(runs)
}

/// Fits a spline to the signal once, then resamples, symbolizes, and
/// histograms at each requested rate.
///
/// Pairs are returned in the order the rates were given.
///
/// # Errors
///
/// Propagates [`Error::TooShort`] from the fit or from symbolizing a grid
/// that came out shorter than three samples, and
/// [`Error::InconsistentTriple`] when `epsilon > 0`.
///
/// # Panics
///
/// Panics if a rate is not positive and finite.
pub fn resample_study<F: Real>(
    signal: &Signal<F>,
    rates_hz: &[F],
    epsilon: F,
) -> Result<Vec<(F, ConfigHistogram)>> {
    let spline = fit_cubic_spline(signal)?;
    rates_hz
        .iter()
        .map(|&rate| {
            let resampled = resample(&spline, rate);
            let symbols = symbolize(&resampled, epsilon)?;
            Ok((rate, config_histogram(&symbols)?))
        })
        .collect()
}
