//! Special functions, Gauss-Legendre quadrature and random streams.

mod bessel;
mod expint;
mod quadrature;
mod rng;

pub use bessel::{bessel_j0, bessel_k0};
pub use expint::{exp_e1, expint_e1};
pub use quadrature::{gauss_legendre_rule, GaussLegendre, QuadratureRule};
pub use rng::{sample_complex_gaussian, stream_rng, unit_complex_gaussian, StreamRng};

/// Node count used for the angular PEP integral unless configured otherwise.
pub const DEFAULT_QUADRATURE_NODES: usize = 64;
