//! Shape-based analysis of uniformly sampled signals.
//!
//! Every interior sample of a signal is classified by the signs of its
//! backward difference, second difference, and forward difference into one of
//! thirteen realizable configurations ([`encoder`]). The symbol strings that
//! result feed:
//!
//! - a five-state acceptor whose transitions encode slope continuity
//!   ([`automaton`]),
//! - a weighted transducer that detects spike-shaped excursions through a
//!   cumulative-weight balance ([`transducer`]),
//! - histogram, entropy, distance, and information measures ([`analysis`]),
//! - a natural cubic-spline resampler for studying how the configuration
//!   distribution responds to the sampling rate ([`resampler`]).
//!
//! Sample scalars are generic over [`Real`]; [`Signal64`] and [`Signal32`]
//! fix the two common choices.

pub mod analysis;
pub mod automaton;
pub mod encoder;
mod error;
pub mod resampler;
pub mod signal;
pub mod transducer;

use core::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

pub use analysis::{
    bhattacharyya, config_histogram, semantic_entropy, semantic_information, sliding_entropy,
    Calibration, ConfigHistogram, EntropySeries,
};
pub use automaton::{compatible, dfa_accept, dfa_step, AcceptanceResult, DfaState};
pub use encoder::{
    classify_window, p_products, semantic_power, sign_of, symbolize, ConfigSymbol, Sign,
    SignTriple,
};
pub use error::{Error, Result};
pub use resampler::{
    fit_cubic_spline, resample, resample_study, shape_runs, RunKind, ShapeRun, SplineModel,
};
pub use signal::{gen_sine, gen_synthetic_ap, shuffle_surrogate, Signal, SplitMix64};
pub use transducer::{
    detect_spikes, edge_weight, weight_vector, DetectorConfig, SpikeEvent, WeightVector,
};

/// Scalar type for signal samples: `f32`, `f64`, or any float offering the
/// same numeric operations.
pub trait Real: Float + FloatConst + FromPrimitive + ToPrimitive + Debug {}

impl<T> Real for T where T: Float + FloatConst + FromPrimitive + ToPrimitive + Debug {}

/// Signal with `f64` samples.
pub type Signal64 = Signal<f64>;
/// Signal with `f32` samples.
pub type Signal32 = Signal<f32>;
