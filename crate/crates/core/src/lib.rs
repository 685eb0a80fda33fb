//! Simulation and error analysis of multi-relay differential amplify-and-forward
//! (D-AF) networks over time-varying Rayleigh fading.
//!
//! The crate is organised bottom-up:
//!
//! * [`mathkernel`]: Bessel functions, the exponential integral, Gauss-Legendre
//!   rules and seeded random streams.
//! * [`channel`]: AR(1) and sum-of-sinusoids fading generators, the cascaded
//!   source-relay-destination channel and its statistics.
//! * [`phylink`]: differential M-PSK, the two-phase relay transmission, the
//!   combiners (CDD, TVD, optimum) and bit-error Monte Carlo.
//! * [`analysis`]: pairwise error probability, its upper bound and the high-SNR
//!   error floors.
//! * [`harness`]: scenario configuration, BER sweeps, envelope histograms and
//!   CSV output.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod channel;
pub mod error;
pub mod harness;
pub mod mathkernel;
pub mod phylink;
pub mod scenario;

#[cfg(test)]
pub(crate) mod oracle;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use scenario::{ChannelGenerator, ScenarioConfig};

/// A time-indexed sequence of complex channel gains or signal samples.
pub type ComplexSeries = Vec<Complex64>;
