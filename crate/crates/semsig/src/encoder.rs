//! Sign classification of three-sample windows into the thirteen realizable
//! configurations.

use core::fmt;

use crate::{Error, Real, Result, Signal};

/// Sign of a difference, ordered by the hierarchy `Minus < Zero < Plus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    /// Strictly negative.
    Minus,
    /// Zero (or within the sign tolerance of zero).
    Zero,
    /// Strictly positive.
    Plus,
}

impl Sign {
    /// The sign as -1, 0, or +1.
    pub fn value(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Zero => 0,
            Sign::Plus => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-",
            Sign::Zero => "0",
            Sign::Plus => "+",
        })
    }
}

/// Sign of `x`, treating magnitudes up to `epsilon` as zero.
pub fn sign_of<F: Real>(x: F, epsilon: F) -> Sign {
    if x > epsilon {
        Sign::Plus
    } else if x < -epsilon {
        Sign::Minus
    } else {
        Sign::Zero
    }
}

/// Ordered signs of one window's backward difference, second difference, and
/// forward difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignTriple {
    /// Sign of `x1 - x0`.
    pub d_back: Sign,
    /// Sign of the second difference `x2 - 2·x1 + x0`.
    pub dd: Sign,
    /// Sign of `x2 - x1`.
    pub d_fwd: Sign,
}

/// Sign patterns of the thirteen configurations, in code order.
const TRIPLES: [(Sign, Sign, Sign); 13] = [
    (Sign::Minus, Sign::Plus, Sign::Minus),
    (Sign::Plus, Sign::Minus, Sign::Plus),
    (Sign::Plus, Sign::Plus, Sign::Plus),
    (Sign::Minus, Sign::Minus, Sign::Minus),
    (Sign::Minus, Sign::Plus, Sign::Plus),
    (Sign::Plus, Sign::Minus, Sign::Minus),
    (Sign::Plus, Sign::Zero, Sign::Plus),
    (Sign::Minus, Sign::Zero, Sign::Minus),
    (Sign::Zero, Sign::Zero, Sign::Zero),
    (Sign::Zero, Sign::Plus, Sign::Plus),
    (Sign::Zero, Sign::Minus, Sign::Minus),
    (Sign::Plus, Sign::Minus, Sign::Zero),
    (Sign::Minus, Sign::Plus, Sign::Zero),
];

/// One of the thirteen realizable window configurations, numbered 1
/// through 13.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConfigSymbol(u8);

impl ConfigSymbol {
    /// Number of distinct configurations.
    pub const COUNT: usize = 13;

    /// Builds a symbol from its 1-based code.
    pub fn new(code: u8) -> Option<Self> {
        (1..=Self::COUNT as u8).contains(&code).then_some(Self(code))
    }

    /// All thirteen symbols in code order.
    pub fn all() -> [ConfigSymbol; Self::COUNT] {
        core::array::from_fn(|i| ConfigSymbol(i as u8 + 1))
    }

    /// 1-based code matching the configuration numbering.
    pub fn code(self) -> u8 {
        self.0
    }

    /// 0-based index for array lookups.
    pub fn index(self) -> usize {
        usize::from(self.0) - 1
    }

    /// The sign pattern this symbol stands for.
    pub fn triple(self) -> SignTriple {
        let (d_back, dd, d_fwd) = TRIPLES[self.index()];
        SignTriple { d_back, dd, d_fwd }
    }

    /// Looks up the symbol for a sign pattern, if the pattern is realizable.
    pub fn from_triple(triple: SignTriple) -> Option<Self> {
        TRIPLES
            .iter()
            .position(|&(d_back, dd, d_fwd)| {
                d_back == triple.d_back && dd == triple.dd && d_fwd == triple.d_fwd
            })
            .map(|i| Self(i as u8 + 1))
    }
}

impl fmt::Display for ConfigSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Left and right products of one window: the second difference times the
/// backward and forward first differences respectively.
///
/// The second difference is computed as `d_fwd - d_back` (algebraically
/// `x2 - 2·x1 + x0`), which keeps its floating-point sign exactly consistent
/// with the two first differences.
pub fn p_products<F: Real>(x0: F, x1: F, x2: F) -> (F, F) {
    let d_back = x1 - x0;
    let d_fwd = x2 - x1;
    let dd = d_fwd - d_back;
    (dd * d_back, dd * d_fwd)
}

/// Classifies one three-sample window by the signs of its differences.
///
/// With `epsilon = 0` every window matches a configuration. A positive
/// `epsilon` rounds each small difference to zero independently, which can
/// produce a sign pattern outside the thirteen configurations; that is
/// reported as an error rather than coerced to a nearby symbol.
///
/// # Errors
///
/// [`Error::InconsistentTriple`] when the rounded signs match no
/// configuration (possible only with `epsilon > 0`).
pub fn classify_window<F: Real>(x0: F, x1: F, x2: F, epsilon: F) -> Result<ConfigSymbol> {
    let d_back = x1 - x0;
    let d_fwd = x2 - x1;
    let dd = d_fwd - d_back;
    let triple = SignTriple {
        d_back: sign_of(d_back, epsilon),
        dd: sign_of(dd, epsilon),
        d_fwd: sign_of(d_fwd, epsilon),
    };
    ConfigSymbol::from_triple(triple).ok_or(Error::InconsistentTriple {
        d_back: triple.d_back,
        dd: triple.dd,
        d_fwd: triple.d_fwd,
    })
}

/// Classifies every interior point of the signal, yielding `len - 2`
/// symbols; the first and last sample carry no symbol.
///
/// # Errors
///
/// [`Error::TooShort`] for signals of fewer than three samples;
/// [`Error::InconsistentTriple`] propagated from any window when
/// `epsilon > 0`.
pub fn symbolize<F: Real>(signal: &Signal<F>, epsilon: F) -> Result<Vec<ConfigSymbol>> {
    let s = signal.samples();
    if s.len() < 3 {
        return Err(Error::TooShort {
            len: s.len(),
            min: 3,
        });
    }
    s.windows(3)
        .map(|w| classify_window(w[0], w[1], w[2], epsilon))
        .collect()
}

/// Left product at every interior point: the sequence the sign analysis is
/// built on.
///
/// # Errors
///
/// [`Error::TooShort`] for signals of fewer than three samples.
pub fn semantic_power<F: Real>(signal: &Signal<F>) -> Result<Vec<F>> {
    let s = signal.samples();
    if s.len() < 3 {
        return Err(Error::TooShort {
            len: s.len(),
            min: 3,
        });
    }
    Ok(s.windows(3)
        .map(|w| p_products(w[0], w[1], w[2]).0)
        .collect())
}
